"""Lattices and Q-lattices given by exact Gram matrices.

Conventions: vectors are row vectors of coordinates in the lattice basis,
``<x, y> = x G y^T``.  Root lattices are negative definite throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import gcd, prod
from typing import Iterable, Optional, Sequence

from . import exact as ex


class LatticeError(ValueError):
    """A lattice failed a structural precondition."""


class DegenerateError(LatticeError):
    pass


class PreconditionError(LatticeError):
    def __init__(self, predicate: str, message: str = ""):
        self.predicate = predicate
        super().__init__(f"{predicate}: {message}" if message else predicate)


def _freeze(M) -> tuple:
    return tuple(tuple(ex.normalize(ex.to_fraction(x)) for x in row) for row in M)


@dataclass(frozen=True, eq=False)
class Lattice:
    gram: tuple
    label: str = ""

    def __init__(self, gram, label: str = "", check: bool = True):
        g = _freeze(gram)
        object.__setattr__(self, "gram", g)
        object.__setattr__(self, "label", label)
        if check:
            n = len(g)
            if any(len(r) != n for r in g):
                raise LatticeError("Gram matrix must be square")
            if any(g[i][j] != g[j][i] for i in range(n) for j in range(i)):
                raise LatticeError("Gram matrix must be symmetric")

    def __eq__(self, other):
        return isinstance(other, Lattice) and self.gram == other.gram

    def __hash__(self):
        return hash(self.gram)

    def __repr__(self):
        tag = f" {self.label!r}" if self.label else ""
        return f"<Lattice rank={self.rank}{tag}>"

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def G(self) -> list:
        return [list(r) for r in self.gram]

    @cached_property
    def det(self):
        return ex.det_exact(self.gram)

    @property
    def is_nondegenerate(self) -> bool:
        return self.det != 0

    @cached_property
    def is_integral(self) -> bool:
        return ex.is_integral(self.gram)

    @cached_property
    def is_even(self) -> bool:
        return self.is_integral and all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def norm(self, x: Sequence):
        return ex.bilinear(x, self.gram, x)

    def inner(self, x: Sequence, y: Sequence):
        return ex.bilinear(x, self.gram, y)

    @cached_property
    def inverse_gram(self) -> list:
        if not self.is_nondegenerate:
            raise DegenerateError("singular Gram matrix")
        return ex.inverse(self.gram)

    @cached_property
    def signature(self) -> tuple[int, int]:
        return signature(self.gram)

    def is_negative_definite(self) -> bool:
        return self.signature == (0, self.rank)

    def is_positive_definite(self) -> bool:
        return self.signature == (self.rank, 0)

    def is_hyperbolic(self) -> bool:
        return self.rank >= 1 and self.signature == (1, self.rank - 1)

    def is_p_elementary(self, p: int) -> bool:
        return self.is_integral and ex.is_integral(ex.scale(self.inverse_gram, p))

    def to_json(self) -> dict:
        return {"rank": self.rank, "gram": [[_json_entry(x) for x in r] for r in self.gram]}

    @classmethod
    def from_json(cls, data: dict, label: str = "") -> "Lattice":
        gram = [[ex.to_fraction(x) for x in row] for row in data["gram"]]
        if "rank" in data and data["rank"] != len(gram):
            raise LatticeError(f"declared rank {data['rank']} != Gram size {len(gram)}")
        return cls(gram, label=label)

    def direct_sum(self, other: "Lattice", label: str = "") -> "Lattice":
        return Lattice(ex.block_diagonal(self.gram, other.gram),
                       label or f"{self.label}+{other.label}")


def _json_entry(x):
    x = ex.normalize(ex.to_fraction(x))
    return x if isinstance(x, int) else f"{x.numerator}/{x.denominator}"


def vector_to_json(v: Sequence) -> list:
    return [_json_entry(x) for x in v]


def vector_from_json(v: Sequence) -> list:
    return [ex.normalize(ex.to_fraction(x)) for x in v]


def direct_sum(*lattices: Lattice, label: str = "") -> Lattice:
    return Lattice(ex.block_diagonal(*[L.gram for L in lattices]),
                   label or " + ".join(L.label for L in lattices))


# ------------------------------------------------------------------ signature

def signature(G: Sequence[Sequence]) -> tuple[int, int]:
    """(n_plus, n_minus) by symmetric Gaussian elimination over Q.

    A zero pivot with a nonzero off-diagonal entry is removed by the
    unimodular congruence ``e_i <- e_i + e_j``.
    """
    A = [[ex.to_fraction(x) for x in row] for row in G]
    n = len(A)
    pos = neg = 0
    active = list(range(n))
    while active:
        i = next((k for k in active if A[k][k] != 0), None)
        if i is None:
            pair = next(((a, b) for a in active for b in active if a != b and A[a][b] != 0), None)
            if pair is None:
                break  # remaining block is zero
            a, b = pair
            for k in range(n):
                A[a][k] += A[b][k]
            for k in range(n):
                A[k][a] += A[k][b]
            i = a
        piv = A[i][i]
        if piv > 0:
            pos += 1
        else:
            neg += 1
        active.remove(i)
        row_i = A[i]
        for k in active:
            if A[k][i] != 0:
                f = A[k][i] / piv
                row_k = A[k]
                for j in active:
                    row_k[j] -= f * row_i[j]
                A[k][i] = 0
    return pos, neg


# ------------------------------------------------------------- basic operations

def dual(L: Lattice) -> Lattice:
    """Gram matrix of the dual basis, i.e. the inverse Gram matrix."""
    if not L.is_nondegenerate:
        raise DegenerateError("dual of a degenerate lattice")
    return Lattice(L.inverse_gram, label=f"{L.label}^dual" if L.label else "")


def rescale(L: Lattice, m) -> Lattice:
    m = ex.to_fraction(m)
    if m == 0:
        raise LatticeError("rescaling factor must be nonzero")
    if m == 1:
        return L
    return Lattice(ex.scale(L.gram, m), label=f"{L.label}({m})" if L.label else "")


def dual_rescale_p(L: Lattice, p: int) -> Lattice:
    """L^dual(p): the dual lattice with its form multiplied by ``p``."""
    if not L.is_even:
        raise PreconditionError("not even", f"{L!r}")
    if not L.is_p_elementary(p):
        raise PreconditionError(f"not {p}-elementary", f"{L!r}")
    if p == 2 and not is_type_I(L):
        raise PreconditionError("not type I", f"{L!r} has a discriminant value outside Z/2Z")
    out = Lattice(ex.scale(L.inverse_gram, p), label=f"{L.label}^dual({p})" if L.label else "")
    assert out.is_even and out.is_p_elementary(p)
    return out


# --------------------------------------------------------- discriminant forms

def _mod2(x: Fraction) -> Fraction:
    x = ex.to_fraction(x)
    return x - 2 * (x.numerator // (2 * x.denominator))


def _mod1(x: Fraction) -> Fraction:
    x = ex.to_fraction(x)
    return x - (x.numerator // x.denominator)


@dataclass(frozen=True)
class DiscriminantForm:
    """Finite quadratic form on L^dual / L in the SNF-adapted generators.

    ``orders[i]`` is the order of generator ``i``; ``generators[i]`` is a
    representative in L^dual (coordinates in the basis of L).  Values of
    ``q`` live in [0, 2), values of ``b`` in [0, 1).
    """

    orders: tuple
    generators: tuple
    q_values: tuple
    b_values: tuple
    gram: tuple = field(repr=False)
    _U: tuple = field(repr=False)
    _diag: tuple = field(repr=False)

    @property
    def order(self) -> int:
        return prod(self.orders)

    def elements(self) -> Iterable[tuple]:
        return product(*[range(d) for d in self.orders])

    def representative(self, elem: Sequence[int]) -> list:
        n = len(self.gram)
        v = [Fraction(0)] * n
        for a, g in zip(elem, self.generators):
            if a:
                v = [x + a * y for x, y in zip(v, g)]
        return [ex.normalize(x) for x in v]

    def q(self, elem: Sequence[int]) -> Fraction:
        total = Fraction(0)
        for i, a in enumerate(elem):
            total += a * a * self.q_values[i]
            for j in range(i + 1, len(elem)):
                total += 2 * a * elem[j] * self.b_values[i][j]
        return _mod2(total)

    def b(self, x: Sequence[int], y: Sequence[int]) -> Fraction:
        total = Fraction(0)
        for i, a in enumerate(x):
            for j, c in enumerate(y):
                total += a * c * self.b_values[i][j]
        return _mod1(total)

    def class_of(self, v: Sequence) -> tuple:
        """Element of the discriminant group represented by ``v`` in L^dual."""
        # v = y U with y_i in (1/d_i) Z  =>  y = v U^{-1}
        y = ex.vec_mat(list(v), self._Uinv)
        out = []
        for i, d in enumerate(self._diag):
            c = ex.to_fraction(y[i]) * d
            if c.denominator != 1:
                raise LatticeError("vector is not in the dual lattice")
            if d > 1:
                out.append(int(c) % d)
        return tuple(out)

    @cached_property
    def _Uinv(self):
        return ex.inverse(self._U)


def discriminant_form(L: Lattice, require_even: bool = True) -> DiscriminantForm:
    if not L.is_integral:
        raise PreconditionError("not integral", f"{L!r}")
    if require_even and not L.is_even:
        raise PreconditionError("not even", f"{L!r}")
    if not L.is_nondegenerate:
        raise DegenerateError("degenerate lattice has no discriminant form")
    snf = ex.smith_normal_form(L.gram)
    diag = snf.diagonal
    gens = []
    orders = []
    for i, d in enumerate(diag):
        if d > 1:
            gens.append(tuple(ex.normalize(Fraction(x, d)) for x in snf.U[i]))
            orders.append(d)
    G = L.gram
    qv = tuple(_mod2(ex.bilinear(g, G, g)) for g in gens)
    bv = tuple(tuple(_mod1(ex.bilinear(g, G, h)) for h in gens) for g in gens)
    return DiscriminantForm(tuple(orders), tuple(gens), qv, bv, G,
                            tuple(tuple(r) for r in snf.U), tuple(diag))


def is_type_I(L: Lattice) -> bool:
    """Even 2-elementary lattice whose discriminant form is Z/2Z-valued."""
    if not (L.is_even and L.is_p_elementary(2)):
        return False
    D = discriminant_form(L)
    return all(ex.to_fraction(v).denominator == 1 for v in D.q_values)


@dataclass(frozen=True)
class LatticeProfile:
    rank: int
    even: bool
    signature: tuple
    discriminant: object
    discriminant_group: tuple
    elementary_prime: Optional[int]
    type_I: bool

    def p_elementary(self, p: int) -> bool:
        return self.elementary_prime == p or self.discriminant_group == ()

    @property
    def hyperbolic(self) -> bool:
        return self.signature == (1, self.rank - 1)

    def lines(self) -> list[str]:
        return [
            f"rank\t{self.rank}",
            f"even\t{self.even}",
            f"signature\t{self.signature[0]},{self.signature[1]}",
            f"discriminant\t{self.discriminant}",
            f"discriminant_group\t{list(self.discriminant_group) or [1]}",
            f"elementary_prime\t{self.elementary_prime}",
            f"type_I\t{self.type_I}",
        ]


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def classify(L: Lattice) -> LatticeProfile:
    if not L.is_integral:
        raise PreconditionError("not integral", f"{L!r}")
    snf = ex.smith_normal_form(L.gram)
    group = tuple(d for d in snf.invariant_factors if d > 1)
    prime = None
    if group and len(set(group)) == 1 and len(_prime_factors(group[0])) == 1 \
            and _prime_factors(group[0])[0] == group[0]:
        prime = group[0]
    type_one = L.is_nondegenerate and is_type_I(L)
    return LatticeProfile(L.rank, L.is_even, L.signature, L.det, group, prime, type_one)


# ------------------------------------------------------------------ sublattices

@dataclass(frozen=True, eq=False)
class Sublattice:
    ambient: Lattice
    basis: tuple

    def __init__(self, ambient: Lattice, basis: Sequence[Sequence[int]]):
        rows = tuple(tuple(int(x) for x in r) for r in basis)
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "basis", rows)
        if rows and ex.rank(rows) != len(rows):
            raise LatticeError("sublattice generators are linearly dependent")

    @property
    def rank(self) -> int:
        return len(self.basis)

    def lattice(self, label: str = "") -> Lattice:
        B = [list(r) for r in self.basis]
        return Lattice(ex.mat_mul(ex.mat_mul(B, self.ambient.gram), ex.transpose(B)), label=label)


def orthogonal_complement(S: Sublattice) -> Sublattice:
    """All ambient vectors orthogonal to ``S``; the result is primitive."""
    induced = S.lattice()
    if S.rank and not induced.is_nondegenerate:
        raise DegenerateError("orthogonal complement of a degenerate sublattice")
    n = S.ambient.rank
    if S.rank == 0:
        return Sublattice(S.ambient, ex.identity(n))
    M = ex.mat_mul(S.ambient.gram, ex.transpose([list(r) for r in S.basis]))
    return Sublattice(S.ambient, ex.integer_left_kernel(M))


def saturation(S: Sublattice) -> Sublattice:
    return Sublattice(S.ambient, ex.saturation_basis([list(r) for r in S.basis]))


def is_primitive(S: Sublattice) -> bool:
    if S.rank == 0:
        return True
    return all(d == 1 for d in ex.smith_normal_form([list(r) for r in S.basis]).invariant_factors)


def is_primitive_vector(v: Sequence) -> bool:
    if any(ex.to_fraction(x).denominator != 1 for x in v):
        return False
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g == 1


def quotient_by_isotropic(S: Lattice, f: Sequence[int]) -> tuple[Lattice, list]:
    """Gram of <f>^perp / <f> and the basis (ambient coordinates) used for it."""
    f = [int(x) for x in f]
    if not is_primitive_vector(f):
        raise PreconditionError("not primitive", f"{f}")
    if S.norm(f) != 0:
        raise PreconditionError("not isotropic", f"f^2 = {S.norm(f)}")
    perp = ex.integer_left_kernel([[x] for x in ex.vec_mat(f, S.gram)])
    coords = ex.kernel_and_solve_rational(ex.transpose(perp), f)
    coords = [int(x) for x in coords]
    W = ex.unimodular_completion(coords)
    new_basis = ex.mat_mul(W, perp)
    assert new_basis[0] == f
    rest = new_basis[1:]
    Q = ex.mat_mul(ex.mat_mul(rest, S.gram), ex.transpose(rest)) if rest else []
    return Lattice(Q, label="fiber"), rest


# ------------------------------------------------------------------ overlattices

def overlattice_from_glue(L: Lattice, glue: Sequence[Sequence]) -> tuple[Lattice, list]:
    """Lattice spanned by L and glue vectors (coordinates in L's basis).

    Returns the overlattice Gram on a Hermite-reduced basis together with
    that basis in L-coordinates.
    """
    n = L.rank
    glue = [[ex.to_fraction(x) for x in g] for g in glue]
    for g in glue:
        if not ex.is_integral([ex.vec_mat(g, L.gram)]):
            raise LatticeError(f"glue vector {g} is not in the dual lattice")
    basis = ex.row_lattice_basis(ex.identity(n) + glue)
    G = ex.mat_mul(ex.mat_mul(basis, L.gram), ex.transpose(basis))
    M = Lattice(G, label=f"{L.label}+glue" if L.label else "")
    if not M.is_integral:
        raise LatticeError("glue produces a non-integral overlattice")
    if L.is_even and not M.is_even:
        bad = next(i for i in range(n) if G[i][i] % 2)
        raise LatticeError(f"glue produces an odd vector (norm {G[bad][bad]})")
    idx = abs(ex.det_exact(basis)) ** -1 if basis else 1
    assert (abs(ex.to_fraction(L.det)) / ex.to_fraction(idx) ** 2) == abs(ex.to_fraction(M.det))
    return M, basis


# --------------------------------------------------------------- dual coverage

def dual_coverage(T: Lattice, n) -> dict:
    """Count vectors of norm ``n`` in T^dual per discriminant class."""
    from .roots import vectors_of_norm

    if not T.is_negative_definite():
        raise PreconditionError("not definite", f"{T!r}")
    D = discriminant_form(T, require_even=False)
    Tdual = dual(T)
    counts = {e: 0 for e in D.elements()}
    for y in vectors_of_norm(Tdual, n):
        # y are coordinates in the dual basis; convert to T-coordinates
        x = ex.vec_mat(y, T.inverse_gram)
        counts[D.class_of(x)] += 1
    return counts
