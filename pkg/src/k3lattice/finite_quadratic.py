"""Quadratic spaces over F_p (p odd), their F_{p^2} extension and Frobenius,
characteristic subspaces and stabilizers of families of them.

Convention: q0(x) = b0(x, x).  Vectors are lists of field elements in the
encoding of :class:`GF`; F_p elements are the integers 0..p-1 in both
F_p and F_{p^2}.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

import numpy as np
from sympy import factorint

from . import exact as ex
from .fields import GF, smallest_irreducible_c
from .lattice import Lattice, PreconditionError, discriminant_form


@dataclass
class FiniteQuadraticSpace:
    p: int
    gram: list           # b0 on the basis, entries in 0..p-1

    def __post_init__(self):
        if self.p % 2 == 0:
            raise ValueError("p must be odd")
        self.gram = [[x % self.p for x in row] for row in self.gram]
        if self.dim and GF(self.p).det(self.gram) == 0:
            raise ValueError("b0 is degenerate")

    @property
    def dim(self) -> int:
        return len(self.gram)

    def b(self, x: Sequence[int], y: Sequence[int]) -> int:
        return sum(x[i] * self.gram[i][j] * y[j] for i in range(self.dim) for j in range(self.dim)) % self.p

    def q(self, x: Sequence[int]) -> int:
        return self.b(x, x)


def quadratic_space_from_lattice(N: Lattice, p: int) -> FiniteQuadraticSpace:
    """(pN^dual / pN, p<x,y> mod p) on the SNF generators of the discriminant group."""
    if p % 2 == 0:
        raise ValueError("p must be odd")
    if not N.is_even:
        raise PreconditionError("not even", f"{N!r}")
    if not N.is_p_elementary(p):
        raise PreconditionError(f"not {p}-elementary", f"{N!r}")
    D = discriminant_form(N)
    gens = D.generators
    gram = [[int(p * ex.to_fraction(ex.bilinear(g, N.gram, h))) % p for h in gens] for g in gens]
    return FiniteQuadraticSpace(p, gram)


# ----------------------------------------------------------- classification

def _half(p: int) -> int:
    return pow(2, -1, p)


def witt_decomposition(V: FiniteQuadraticSpace) -> tuple[list[tuple], list]:
    """Split off hyperbolic planes: returns ([(e, f), ...], anisotropic basis).

    Each pair has q(e) = q(f) = 0 and b(e, f) = 1.
    """
    p = V.p
    F = GF(p)
    n = V.dim
    W = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    planes = []
    while True:
        k = len(W)
        e = None
        if k >= 2:
            m = min(k, 3)
            for coeffs in product(range(p), repeat=m):
                if not any(coeffs):
                    continue
                x = [sum(coeffs[t] * W[t][i] for t in range(m)) % p for i in range(n)]
                if V.q(x) == 0:
                    e = x
                    break
        if e is None:
            return planes, W
        w = next(w for w in W if V.b(e, w))
        s = pow(V.b(e, w), -1, p)
        f = [s * x % p for x in w]
        t = V.q(f) * _half(p) % p
        f = [(fi - t * ei) % p for fi, ei in zip(f, e)]
        assert V.q(f) == 0 and V.b(e, f) == 1
        planes.append((e, f))
        # complement of span(e, f) inside span(W)
        cond = [[V.b(w, e) for w in W], [V.b(w, f) for w in W]]
        coeff = F.nullspace(cond)
        W = [[sum(c[t] * W[t][i] for t in range(k)) % p for i in range(n)] for c in coeff]


def classify_form(V: FiniteQuadraticSpace) -> str:
    if V.dim % 2:
        raise ValueError("classification needs even dimension")
    planes, aniso = witt_decomposition(V)
    verdict = "neutral" if not aniso else "non-neutral"
    # independent check: neutral iff (-1)^m det b0 is a square
    m = V.dim // 2
    F = GF(V.p)
    d = F.det(V.gram) if V.dim else 1
    if m % 2:
        d = F.neg(d)
    assert (verdict == "neutral") == F.is_square(d)
    if V.dim and V.p ** V.dim <= 10 ** 5:
        eps = 1 if verdict == "neutral" else -1
        found = sum(1 for x in product(range(V.p), repeat=V.dim) if any(x) and V.q(x) == 0)
        assert found == isotropic_count(V.p, V.dim, eps)
    return verdict


def isotropic_count(p: int, dim: int, eps: int) -> int:
    """Nonzero isotropic vectors of the eps-type form in dimension 2m."""
    m = dim // 2
    return (p ** m - eps) * (p ** (m - 1) + eps)


# ------------------------------------------------------------------ orders

def orthogonal_group_order(p: int, dim: int, eps: int) -> int:
    if dim % 2 or dim <= 0:
        raise ValueError("dimension must be even and positive")
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    s = dim // 2
    out = 2 * p ** (s * (s - 1)) * (p ** s - eps)
    for i in range(1, s):
        out *= p ** (2 * i) - 1
    return out


def factorization(n: int) -> dict[int, int]:
    return dict(sorted(factorint(n).items()))


def format_factorization(fac: dict[int, int]) -> str:
    return " * ".join(f"{q}^{e}" if e > 1 else str(q) for q, e in fac.items())


def standard_form_gram(p: int, dim: int, eps: int) -> list[list[int]]:
    """b0 of f_+ or f_- on the a-basis."""
    h = _half(p)
    G = [[0] * dim for _ in range(dim)]
    start = 0
    if eps == -1:
        c = smallest_irreducible_c(p)
        G[0][0] = G[1][1] = 1
        G[0][1] = G[1][0] = c * h % p
        start = 2
    for i in range(start, dim, 2):
        G[i][i + 1] = G[i + 1][i] = h
    return G


def _preserves(g: np.ndarray, G: np.ndarray, p: int) -> bool:
    return not ((g.T @ G @ g - G) % p).any()


def brute_force_orthogonal_order(p: int, dim: int, eps: int) -> int:
    """Count all matrices preserving the form (dimension 2 only)."""
    G = np.array(standard_form_gram(p, dim, eps), dtype=np.int64)
    count = 0
    for entries in product(range(p), repeat=dim * dim):
        g = np.array(entries, dtype=np.int64).reshape(dim, dim)
        if _preserves(g, G, p):
            count += 1
    return count


def reflection_group_order(p: int, dim: int, eps: int) -> int:
    """Order of the group generated by reflections in anisotropic vectors."""
    G = np.array(standard_form_gram(p, dim, eps), dtype=np.int64)
    V = FiniteQuadraticSpace(p, G.tolist())
    gens = []
    for x in product(range(p), repeat=dim):
        if not any(x):
            continue
        qx = V.q(x)
        if qx == 0:
            continue
        # s_x(y) = y - 2 b(x, y)/q(x) x
        xv = np.array(x, dtype=np.int64)
        k = 2 * pow(qx, -1, p) % p
        S = (np.eye(dim, dtype=np.int64) - k * np.outer(xv, xv @ G)) % p
        gens.append(S)
    uniq = {g.tobytes(): g for g in gens}
    gens = list(uniq.values())
    ident = np.eye(dim, dtype=np.int64)
    seen = {ident.tobytes()}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = (s @ g) % p
                key = h.tobytes()
                if key not in seen:
                    seen.add(key)
                    nxt.append(h)
        frontier = nxt
    for k in list(seen)[:50]:
        g = np.frombuffer(k, dtype=np.int64).reshape(dim, dim)
        assert _preserves(g, G, p)
    return len(seen)


# ---------------------------------------------------- F_{p^2} and Frobenius

@dataclass
class StandardBasis:
    p: int
    sigma: int
    c: int
    field: GF
    gram: list                  # b0 on the a-basis (F_p)
    b: dict                     # (i, eps) -> vector over F_{p^2}, i = 1..sigma
    alpha: int

    def pairing(self, x: Sequence[int], y: Sequence[int]) -> int:
        F = self.field
        n = len(self.gram)
        s = 0
        for i in range(n):
            if not x[i]:
                continue
            for j in range(n):
                if y[j] and self.gram[i][j]:
                    s = F.add(s, F.mul(F.mul(x[i], self.gram[i][j]), y[j]))
        return s

    def space(self) -> FiniteQuadraticSpace:
        return FiniteQuadraticSpace(self.p, self.gram)


def build_standard_basis(p: int, sigma: int) -> StandardBasis:
    if sigma < 1:
        raise ValueError("sigma must be at least 1")
    c = smallest_irreducible_c(p)
    F = GF(p, 2, c)
    n = 2 * sigma
    gram = standard_form_gram(p, n, -1)
    alpha = F.alpha
    abar = F.frobenius(alpha)
    b = {}
    a = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    b[(1, -1)] = [alpha, 1] + [0] * (n - 2)
    b[(1, 1)] = [abar, 1] + [0] * (n - 2)
    for i in range(2, sigma + 1):
        b[(i, -1)] = a[2 * i - 2]
        b[(i, 1)] = a[2 * i - 1]
    B = StandardBasis(p, sigma, c, F, gram, b, alpha)
    _verify_basis(B)
    return B


def _verify_basis(B: StandardBasis) -> None:
    p = B.p
    h = _half(p)
    for key, v in B.b.items():
        assert B.pairing(v, v) == 0, f"b{key} not isotropic"
    for (i, e1), v in B.b.items():
        for (j, e2), w in B.b.items():
            val = B.pairing(v, w)
            if i != j:
                assert val == 0
            elif e1 != e2:
                want = (4 - B.c * B.c) * h % p if i == 1 else h
                assert val == want, ((i, e1), (j, e2), val, want)


def frobenius(F: GF, x: Sequence[int]) -> list[int]:
    return [F.frobenius(a) for a in x]


def pairing_table(B: StandardBasis) -> list[tuple]:
    keys = sorted(B.b)
    return [(k1, k2, B.pairing(B.b[k1], B.b[k2])) for k1 in keys for k2 in keys]


# ------------------------------------------------- characteristic subspaces

@dataclass(frozen=True)
class SignVector:
    e: tuple

    def __post_init__(self):
        if not self.e or any(x not in (1, -1) for x in self.e):
            raise ValueError("entries must be +1 or -1")

    @property
    def parity(self) -> int:
        out = 1
        for x in self.e:
            out *= x
        return out

    def flip(self, i: int) -> "SignVector":
        return SignVector(tuple(-x if k == i else x for k, x in enumerate(self.e)))


@dataclass
class CharacteristicSubspace:
    ambient: "StandardBasis"
    basis: list

    def is_characteristic(self) -> bool:
        return is_characteristic(self.ambient, self.basis)


def is_totally_isotropic(B: StandardBasis, K: Sequence[Sequence[int]]) -> bool:
    return all(B.pairing(x, y) == 0 for x in K for y in K)


def is_characteristic(B: StandardBasis, K: Sequence[Sequence[int]]) -> bool:
    F = B.field
    if F.rank(K) != B.sigma or len(K) != B.sigma:
        raise ValueError(f"expected a {B.sigma}-dimensional subspace")
    if not is_totally_isotropic(B, K):
        return False
    phiK = [frobenius(F, x) for x in K]
    return F.rank(list(K) + phiK) == B.sigma + 1


def intersection_dim(F: GF, K1: Sequence[Sequence[int]], K2: Sequence[Sequence[int]]) -> int:
    return F.rank(K1) + F.rank(K2) - F.rank(list(K1) + list(K2))


def sign_vectors(sigma: int, even_only: bool = False) -> list[tuple]:
    out = [e for e in product((1, -1), repeat=sigma)]
    if even_only:
        out = [e for e in out if sum(1 for x in e if x == -1) % 2 == 0]
    return sorted(out, reverse=True)


def K_e(B: StandardBasis, e: Sequence[int]) -> list[list[int]]:
    return [B.b[(i + 1, eps)] for i, eps in enumerate(e)]


def characteristic_family(p: int, sigma: int) -> tuple[StandardBasis, dict]:
    B = build_standard_basis(p, sigma)
    return B, {e: K_e(B, e) for e in sign_vectors(sigma)}


def solve_xi_eta(p: int) -> tuple[int, int]:
    c = smallest_irreducible_c(p)
    for xi in range(p):
        for eta in range(p):
            if (4 - c * c + xi * xi + eta * eta) % p == 0:
                return xi, eta
    raise AssertionError("no solution; impossible for odd p")


# ------------------------------------------------------------- stabilizers

def _split(F: GF, x: int) -> tuple[int, int]:
    return F.coords(x)


def _invariance_equations(B: StandardBasis, K: Sequence[Sequence[int]]) -> list[list[int]]:
    """F_p-linear equations on the entries of g (row-major) for g K inside K."""
    F = B.field
    n = 2 * B.sigma
    ann = F.nullspace([list(x) for x in K])   # w with w . x = 0 for x in K
    rows = []
    for x in K:
        for w in ann:
            # sum_{r,s} w_r g_rs x_s
            coeff = [F.mul(w[r], x[s]) for r in range(n) for s in range(n)]
            re = [_split(F, c)[0] for c in coeff]
            im = [_split(F, c)[1] for c in coeff]
            rows.append(re)
            rows.append(im)
    return rows


@dataclass
class StabilizerResult:
    p: int
    sigma: int
    elements: list              # matrices over F_p (row-major lists)
    solution_dim: int           # dimension of the linear solution space

    @property
    def order(self) -> int:
        return len(self.elements)

    def is_plus_minus_identity(self) -> bool:
        n = 2 * self.sigma
        ident = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        minus = [[(self.p - 1) if i == j else 0 for j in range(n)] for i in range(n)]
        return sorted(map(str, self.elements)) == sorted(map(str, [ident, minus])) or \
            (self.p == 2 and self.elements == [ident])


class StabilizerTooLarge(RuntimeError):
    pass


def _orthogonal_members(B: StandardBasis, basis: list[list[int]], limit: int = 10 ** 6) -> list:
    """Solutions of g^T b0 g = b0 with g in the span of ``basis``.

    Depth-first over the coefficients; each entry of g^T b0 g - b0 is
    tested as soon as the last coefficient it depends on is fixed.
    """
    p = B.p
    n = 2 * B.sigma
    d = len(basis)
    G = np.array(B.gram, dtype=np.int64)
    M = [np.array(v, dtype=np.int64).reshape(n, n) for v in basis]
    Q = [[None] * d for _ in range(d)]
    last = np.full((n, n), -1)
    for l in range(d):
        for k in range(l + 1):
            q = M[k].T @ G @ M[l]
            if k != l:
                q = q + q.T
            Q[k][l] = q % p
            last[Q[k][l] != 0] = l
    if ((G % p)[last < 0] != 0).any():
        return []
    checks = [last == m for m in range(d)]
    out = []
    t = [0] * d

    def walk(m: int, S: np.ndarray):
        if m == d:
            g = sum((t[k] * M[k] for k in range(d)), np.zeros((n, n), dtype=np.int64)) % p
            out.append(g.tolist())
            if len(out) > limit:
                raise StabilizerTooLarge(f"more than {limit} elements")
            return
        cross = sum((t[k] * Q[k][m] for k in range(m)), np.zeros((n, n), dtype=np.int64))
        for x in range(p):
            S2 = (S + x * cross + x * x * Q[m][m]) % p
            if ((S2 - G)[checks[m]] % p).any():
                continue
            t[m] = x
            walk(m + 1, S2)
        t[m] = 0

    walk(0, np.zeros((n, n), dtype=np.int64))
    for g in out[:100]:
        assert _preserves(np.array(g, dtype=np.int64), G, p)
    return sorted(out)


def _stabilizer(B: StandardBasis, subspaces: list[list[list[int]]]) -> StabilizerResult:
    F = GF(B.p)
    n = 2 * B.sigma
    eqs = []
    for K in subspaces:
        eqs.extend(_invariance_equations(B, K))
    basis = F.nullspace(eqs, n * n)
    members = _orthogonal_members(B, basis)
    return StabilizerResult(B.p, B.sigma, members, len(basis))


def family_stabilizer(p: int, sigma: int) -> StabilizerResult:
    """Isometries of (N0, q0) over F_p leaving K_e invariant for every e in E_+."""
    B = build_standard_basis(p, sigma)
    return _stabilizer(B, [K_e(B, e) for e in sign_vectors(sigma, even_only=True)])


def eigenline_vectors(B: StandardBasis) -> list[list[int]]:
    """F_p-rational isotropic vectors b_i + b_j (i != j >= 2, any signs) and
    b_1^+ + b_1^- + xi (b_2^+ + b_2^-) + eta (b_3^+ + b_3^-)."""
    F = B.field
    sigma = B.sigma
    out = []
    for i in range(2, sigma + 1):
        for j in range(i + 1, sigma + 1):
            for e1 in (1, -1):
                for e2 in (1, -1):
                    out.append(F.add_vec(B.b[(i, e1)], B.b[(j, e2)]))
    if sigma >= 3:
        xi, eta = solve_xi_eta(B.p)
        v = F.add_vec(B.b[(1, 1)], B.b[(1, -1)])
        v = F.add_vec(v, F.scale_vec(xi, F.add_vec(B.b[(2, 1)], B.b[(2, -1)])))
        v = F.add_vec(v, F.scale_vec(eta, F.add_vec(B.b[(3, 1)], B.b[(3, -1)])))
        out.append(v)
    for v in out:
        assert B.pairing(v, v) == 0 and all(F.in_prime_field(x) for x in v)
    return out


def genericity_stabilizer(p: int, sigma: int) -> StabilizerResult:
    """Family stabilizer with the extra eigen-line conditions on the rational
    isotropic vectors above; for sigma >= 3 this is {+1, -1}."""
    B = build_standard_basis(p, sigma)
    subs = [K_e(B, e) for e in sign_vectors(sigma, even_only=True)]
    subs += [[v] for v in eigenline_vectors(B)]
    return _stabilizer(B, subs)


def torus_order(p: int, sigma: int) -> int:
    """Order of the diagonal isometries in the b-basis that are defined over F_p."""
    return (p + 1) * (p - 1) ** (sigma - 1)
