"""Short-vector enumeration in definite lattices and ADE classification of root sets."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterator, Sequence

import numpy as np

from . import exact as ex
from .lattice import Lattice, LatticeError, PreconditionError, Sublattice

MAX_MATERIALIZED = 500_000


class NotDefiniteError(LatticeError):
    pass


class EnumerationTooLarge(RuntimeError):
    pass


# ---------------------------------------------------------------- enumeration

def _ldl(Q: Sequence[Sequence[Fraction]]) -> tuple[list, list]:
    """Q(x) = sum_i d_i (x_i + sum_{j>i} l_ij x_j)^2; raises unless Q > 0."""
    n = len(Q)
    A = [[Fraction(x) for x in row] for row in Q]
    d = [Fraction(0)] * n
    l = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        if A[i][i] <= 0:
            raise NotDefiniteError("form is not definite")
        d[i] = A[i][i]
        for j in range(i + 1, n):
            l[i][j] = A[i][j] / d[i]
        for j in range(i + 1, n):
            for k in range(j, n):
                A[j][k] -= l[i][j] * A[i][k]
                A[k][j] = A[j][k]
    return d, l


class _Enumerator:
    """Integer-only Fincke-Pohst on a positive definite rational form.

    After completing squares, the condition Q(x - c) <= T becomes
    ``sum_i e_i (M x_i + Z_i)^2 <= Tn`` with integers e_i, M, Z_i, Tn.
    """

    def __init__(self, Q, bound, centre=None):
        n = len(Q)
        self.n = n
        d, l = _ldl(Q)
        c = [Fraction(0)] * n if centre is None else [Fraction(x) for x in centre]
        offs = [-(c[i] + sum((l[i][j] * c[j] for j in range(i + 1, n)), Fraction(0)))
                for i in range(n)]
        M = 1
        for i in range(n):
            for j in range(i + 1, n):
                M = lcm(M, l[i][j].denominator)
            M = lcm(M, offs[i].denominator)
        self.M = M
        self.m = [[int(l[i][j] * M) for j in range(n)] for i in range(n)]
        self.z0 = [int(o * M) for o in offs]
        W = 1
        scaled = [di / (M * M) for di in d]
        for s in scaled:
            W = lcm(W, s.denominator)
        bound = Fraction(bound)
        W = lcm(W, bound.denominator)
        self.e = [int(s * W) for s in scaled]
        self.Tn = int(bound * W)
        self.symmetric = centre is None or all(x == 0 for x in c)

    def run(self, exact: bool, halve: bool) -> Iterator[tuple]:
        """Yield x with sum = Tn (exact) or <= Tn.

        With ``halve`` only one of each pair ±x is produced (the one whose
        last nonzero coordinate is positive) and zero is skipped.
        """
        n, M, m, z0, e, Tn = self.n, self.M, self.m, self.z0, self.e, self.Tn
        if n == 0:
            if not halve and (Tn == 0 or not exact):
                yield ()
            return
        x = [0] * n
        rem = [0] * (n + 1)
        rem[n] = Tn
        # per level: current candidate, direction state
        Z = [0] * n
        hi = [0] * n   # next candidate going up
        lo = [0] * n   # next candidate going down
        up = [True] * n
        nonzero_above = [False] * (n + 1)

        def start(i):
            zi = z0[i]
            mi = m[i]
            for j in range(i + 1, n):
                if x[j]:
                    zi += mi[j] * x[j]
            Z[i] = zi
            # nearest integer to -zi / M
            c0 = (-zi * 2 + M) // (2 * M)
            if halve and not nonzero_above[i + 1] and c0 < 0:
                c0 = 0
            hi[i] = c0
            lo[i] = c0 - 1
            up[i] = True

        def next_val(i):
            """Next admissible x_i for level i or None."""
            R = rem[i + 1]
            ei = e[i]
            zi = Z[i]
            floor0 = halve and not nonzero_above[i + 1]
            while True:
                if up[i]:
                    v = hi[i]
                    t = M * v + zi
                    q = ei * t * t
                    if q <= R:
                        hi[i] = v + 1
                        return v, q
                    up[i] = False
                    continue
                v = lo[i]
                if floor0 and v < 0:
                    return None
                t = M * v + zi
                q = ei * t * t
                if q <= R:
                    lo[i] = v - 1
                    return v, q
                return None

        i = n - 1
        start(i)
        while True:
            nv = next_val(i)
            if nv is None:
                i += 1
                if i == n:
                    return
                continue
            v, q = nv
            x[i] = v
            rem[i] = rem[i + 1] - q
            if i == 0:
                if (not exact or rem[0] == 0):
                    if halve and not (v or nonzero_above[1]):
                        continue
                    yield tuple(x)
                continue
            nonzero_above[i] = nonzero_above[i + 1] or v != 0
            i -= 1
            start(i)


def iter_short_vectors(Q, bound, centre=None, exact: bool = False) -> Iterator[tuple]:
    """All integer x with Q(x - centre) <= bound (or == bound if ``exact``).

    ``Q`` is a positive definite rational Gram matrix.  No ordering is
    promised; callers needing canonical order sort the result.
    """
    en = _Enumerator(Q, bound, centre)
    if en.symmetric:
        for x in en.run(exact, halve=True):
            yield x
            yield tuple(-a for a in x)
        if not exact or en.Tn == 0:
            yield (0,) * en.n
    else:
        yield from en.run(exact, halve=False)


def _reduced_positive(L: Lattice) -> tuple[list, list]:
    """(-G reduced by LLL, transform H) for negative definite L."""
    Q = ex.scale(L.gram, -1)
    den = ex.common_denominator(Q)
    Qi = [[int(x * den) for x in row] for row in Q]
    if L.rank == 0:
        return [], []
    _ldl(Qi)  # definiteness check
    Qr, H = ex.lll_gram(Qi)
    return ex.scale(Qr, Fraction(1, den)), H


def iter_vectors_of_norm(L: Lattice, n) -> Iterator[tuple]:
    """Stream vectors of norm ``n`` (< 0) of a negative definite lattice."""
    n = ex.to_fraction(n)
    try:
        Qr, H = _reduced_positive(L)
    except NotDefiniteError:
        raise NotDefiniteError(f"{L!r} is not negative definite") from None
    if L.rank == 0:
        return
    for y in iter_short_vectors(Qr, -n, exact=True):
        yield tuple(ex.vec_mat(y, H))


def vectors_of_norm(L: Lattice, n) -> list[tuple]:
    out = []
    for v in iter_vectors_of_norm(L, n):
        out.append(v)
        if len(out) > MAX_MATERIALIZED:
            raise EnumerationTooLarge(f"more than {MAX_MATERIALIZED} vectors; use the iterator")
    out.sort()
    return out


def count_vectors_of_norm(L: Lattice, n) -> int:
    return sum(1 for _ in iter_vectors_of_norm(L, n))


# ------------------------------------------------------------------- ADE types

_FAMILY_ORDER = {"A": 0, "D": 1, "E": 2}
_TOKEN = re.compile(r"^(\d*)([ADE])(\d+)$")


@dataclass(frozen=True)
class ADEType:
    components: tuple  # sorted tuple of (family, index)

    def __init__(self, components=()):
        comps = []
        for fam, k in components:
            k = int(k)
            if fam == "A" and k >= 1 or fam == "D" and k >= 4 or fam == "E" and k in (6, 7, 8):
                comps.append((fam, k))
            else:
                raise ValueError(f"invalid root system {fam}{k}")
        comps.sort(key=lambda c: (_FAMILY_ORDER[c[0]], c[1]))
        object.__setattr__(self, "components", tuple(comps))

    @classmethod
    def parse(cls, text: str) -> "ADEType":
        text = text.strip()
        if text in ("0", ""):
            return cls(())
        comps = []
        for tok in text.split("+"):
            mt = _TOKEN.match(tok.strip())
            if not mt:
                raise ValueError(f"cannot parse root type {tok!r}")
            mult = int(mt.group(1) or 1)
            comps.extend([(mt.group(2), int(mt.group(3)))] * mult)
        return cls(comps)

    @property
    def rank(self) -> int:
        return sum(k for _, k in self.components)

    @property
    def root_count(self) -> int:
        return sum(_root_count(f, k) for f, k in self.components)

    def __str__(self) -> str:
        if not self.components:
            return "0"
        counts = Counter(self.components)
        parts = []
        for comp in sorted(counts, key=lambda c: (_FAMILY_ORDER[c[0]], c[1])):
            mult = counts[comp]
            parts.append(f"{mult if mult > 1 else ''}{comp[0]}{comp[1]}")
        return " + ".join(parts)

    def __add__(self, other: "ADEType") -> "ADEType":
        return ADEType(self.components + other.components)


def _root_count(fam: str, k: int) -> int:
    if fam == "A":
        return k * (k + 1)
    if fam == "D":
        return 2 * k * (k - 1)
    return {6: 72, 7: 126, 8: 240}[k]


def _disc(fam: str, k: int) -> int:
    if fam == "A":
        return k + 1
    if fam == "D":
        return 4
    return {6: 3, 7: 2, 8: 1}[k]


def identify_component(rank: int, count: int, disc: int) -> tuple[str, int]:
    for fam in ("A", "D", "E"):
        if fam == "D" and rank < 4 or fam == "E" and rank not in (6, 7, 8):
            continue
        if _root_count(fam, rank) == count and _disc(fam, rank) == disc:
            return fam, rank
    raise LatticeError(f"no ADE system with rank {rank}, {count} roots, |disc| {disc}")


# --------------------------------------------------------------- Cartan data

def cartan_matrix(fam: str, k: int) -> list[list[int]]:
    """Cartan matrix with Bourbaki labelling (positive definite)."""
    C = [[2 if i == j else 0 for j in range(k)] for i in range(k)]

    def link(a, b):
        C[a][b] = C[b][a] = -1

    if fam == "A":
        for i in range(k - 1):
            link(i, i + 1)
    elif fam == "D":
        if k < 4:
            raise ValueError("D_n needs n >= 4")
        for i in range(k - 2):
            link(i, i + 1)
        link(k - 3, k - 1)
    elif fam == "E":
        if k not in (6, 7, 8):
            raise ValueError("E_n needs n in 6, 7, 8")
        link(0, 2)
        link(1, 3)
        for i in range(2, k - 1):
            link(i, i + 1)
    else:
        raise ValueError(f"unknown family {fam}")
    return C


def root_lattice(t: ADEType | str) -> Lattice:
    """Negative definite root lattice on the simple roots of ``t``."""
    if isinstance(t, str):
        t = ADEType.parse(t)
    blocks = [ex.scale(cartan_matrix(f, k), -1) for f, k in t.components]
    return Lattice(ex.block_diagonal(*blocks) if blocks else [], label=str(t))


# ------------------------------------------------------------ classification

@dataclass(frozen=True)
class RootSet:
    ambient: Lattice
    vectors: tuple

    def __init__(self, ambient: Lattice, vectors, check: bool = True):
        vecs = tuple(sorted(tuple(v) for v in vectors))
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "vectors", vecs)
        if check:
            s = set(vecs)
            for v in vecs:
                if ambient.norm(v) != -2:
                    raise LatticeError(f"{v} is not a root")
                if tuple(-a for a in v) not in s:
                    raise LatticeError("root set is not closed under negation")


def _lex_positive(v: Sequence) -> bool:
    for a in v:
        if a:
            return a > 0
    return False


def _pairings(G, A: Sequence[Sequence], B: Sequence[Sequence]) -> np.ndarray:
    """Matrix of <a, b> for rows a of A and b of B."""
    if ex.is_integral(G):
        try:
            a = np.array(A, dtype=np.int64).reshape(len(A), len(G))
            b = np.array(B, dtype=np.int64).reshape(len(B), len(G))
            g = np.array(G, dtype=np.int64).reshape(len(G), len(G))
            if max(np.abs(a).max(initial=0), np.abs(b).max(initial=0), np.abs(g).max(initial=0)) < 2**15:
                return a @ g @ b.T
        except OverflowError:
            pass
    a = np.array([[ex.to_fraction(x) for x in r] for r in A], dtype=object).reshape(len(A), len(G))
    b = np.array([[ex.to_fraction(x) for x in r] for r in B], dtype=object).reshape(len(B), len(G))
    g = np.array([[ex.to_fraction(x) for x in r] for r in G], dtype=object).reshape(len(G), len(G))
    return a.dot(g).dot(b.T)


def simple_roots(G, roots: Sequence[Sequence[int]]) -> list[tuple]:
    """Simple system of the lexicographically positive roots.

    For positive roots s < r (lex), r - s is again a positive root exactly
    when <r, s> = -1, so r is simple iff no smaller positive root pairs to -1.
    """
    pos = sorted(tuple(r) for r in roots if _lex_positive(r))
    if not pos:
        return []
    A = _pairings(G, pos, pos)
    lower = np.tril(A == -1, k=-1)
    return [pos[i] for i in range(len(pos)) if not lower[i].any()]


def classify_roots(G, roots: Sequence[Sequence[int]]) -> tuple[ADEType, list[tuple]]:
    """ADE type of a root set and a simple system (grouped by component).

    Components are read off the Dynkin graph of the simple system; each root
    belongs to the component of any simple root it pairs nontrivially with.
    """
    roots = sorted(tuple(r) for r in roots)
    simple = simple_roots(G, roots)
    k = len(simple)
    if k == 0:
        return ADEType(()), []
    S = _pairings(G, simple, simple)
    parent = list(range(k))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(k):
        for j in range(i):
            if S[i, j] != 0:
                parent[find(i)] = find(j)
    label = [find(i) for i in range(k)]
    P = _pairings(G, roots, simple)
    counts = Counter()
    for row in P:
        j = next(j for j in range(k) if row[j] != 0)
        counts[label[j]] += 1
    comps = []
    basis: list[tuple] = []
    for c in sorted(set(label), key=label.index):
        idx = [i for i in range(k) if label[i] == c]
        sub = [simple[i] for i in idx]
        disc = abs(ex.det_exact([[int(S[i, j]) if not isinstance(S[i, j], Fraction) else S[i, j]
                                  for j in idx] for i in idx]))
        comps.append(identify_component(len(idx), counts[c], disc))
        basis.extend(sub)
    return ADEType(comps), basis


def ade_classify(R: RootSet) -> ADEType:
    return classify_roots(R.ambient.gram, R.vectors)[0]


def root_set(L: Lattice) -> RootSet:
    return RootSet(L, vectors_of_norm(L, -2), check=False)


def root_sublattice(L: Lattice) -> tuple[Sublattice, ADEType]:
    if not L.is_negative_definite():
        raise PreconditionError("not definite", f"{L!r}")
    t, basis = classify_roots(L.gram, vectors_of_norm(L, -2))
    return Sublattice(L, basis), t
