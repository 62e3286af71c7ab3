"""Genus-one fibration invariants computed from lattices.

A fibration class on the lattice side is a primitive isotropic vector f in
an even hyperbolic lattice S.  When S = U + K with f in U, the fibre data
come from K: reducible fibres from the roots of K, Mordell-Weil from
K modulo its root sublattice.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cache
from math import gcd
from typing import Optional, Sequence

from . import exact as ex
from .golden import GOLDEN
from .lattice import (Lattice, PreconditionError, direct_sum, dual_rescale_p,
                      is_primitive_vector, quotient_by_isotropic)
from .niemeier import TABLE_ORDER, build_niemeier, find_embeddings
from .roots import ADEType, root_sublattice

T_FOR_PRIME = {2: "D4", 3: "2A2"}


@dataclass(frozen=True)
class FibrationClass:
    niemeier_type: ADEType
    fiber_type_sigma1: ADEType
    mw_torsion: tuple
    mw_rank: int
    fiber_type_sigma10: ADEType
    quasi_elliptic_sigma1: bool
    quasi_elliptic_sigma10: bool
    K: Optional[Lattice] = field(default=None, compare=False, repr=False)

    def key(self) -> tuple:
        return (str(self.niemeier_type), str(self.fiber_type_sigma1), self.mw_torsion,
                self.mw_rank, str(self.fiber_type_sigma10))

    def tsv_fields(self) -> list[str]:
        return [str(self.niemeier_type), str(self.fiber_type_sigma1),
                "[" + ", ".join(map(str, self.mw_torsion)) + "]", str(self.mw_rank),
                str(self.fiber_type_sigma10), str(self.quasi_elliptic_sigma1).lower(),
                str(self.quasi_elliptic_sigma10).lower()]


def hyperbolic_plane(m: int = 1) -> Lattice:
    return Lattice([[0, m], [m, 0]], label="U" if m == 1 else f"U({m})")


def mordell_weil(K: Lattice) -> tuple[tuple, int]:
    """(torsion invariant factors, rank) of K modulo its root sublattice."""
    sub, t = root_sublattice(K)
    if sub.rank == 0:
        return (1,), K.rank
    factors = [d for d in ex.smith_normal_form([list(r) for r in sub.basis]).invariant_factors if d > 1]
    return (tuple(factors) or (1,)), K.rank - sub.rank


def is_quasi_elliptic(K: Lattice, p: int) -> bool:
    """Root sublattice of rank 20 and p-elementary."""
    if K.rank != 20:
        raise PreconditionError("wrong rank", f"expected rank 20, got {K.rank}")
    sub, _ = root_sublattice(K)
    if sub.rank != 20:
        return False
    return sub.lattice().is_p_elementary(p)


def _check_isotropic(S: Lattice, f: Sequence[int]) -> None:
    if not is_primitive_vector(f):
        raise PreconditionError("not primitive", f"{list(f)}")
    if S.norm(f) != 0:
        raise PreconditionError("not isotropic", f"f^2 = {S.norm(f)}")


def section_vector(S: Lattice, f: Sequence[int]) -> Optional[list[int]]:
    """A root z with <f, z> = 1, or None if none exists.

    Such z exists iff some u has <f, u> = 1, i.e. the pairings of f with the
    basis have gcd 1: then z = u + a f with a = (-2 - u^2)/2 works because
    S is even.
    """
    _check_isotropic(S, f)
    if not S.is_even:
        raise PreconditionError("not even", f"{S!r}")
    row = [int(x) for x in ex.vec_mat(list(f), S.gram)]
    g = 0
    for x in row:
        g = gcd(g, x)
    if g != 1:
        return None
    # extended gcd along the row gives u with row . u = 1
    u = [0] * len(row)
    acc = 0
    for i, x in enumerate(row):
        if x == 0:
            continue
        if acc == 0:
            u[i] = 1 if x > 0 else -1
            acc = abs(x)
            continue
        d, s, t = ex._xgcd(acc, x)
        u = [s * c for c in u]
        u[i] = t
        acc = d
    assert sum(a * b for a, b in zip(row, u)) == 1
    a = (-2 - S.norm(u)) // 2
    z = [ui + a * fi for ui, fi in zip(u, f)]
    assert S.norm(z) == -2 and S.inner(f, z) == 1
    return z


def has_section(S: Lattice, f: Sequence[int]) -> bool:
    return section_vector(S, f) is not None


def classify_fiber_class(S: Lattice, f: Sequence[int]) -> tuple[bool, Optional[Lattice]]:
    """Lattice-side check that f is a fibre class; returns the fibre lattice."""
    if not is_primitive_vector(f) or S.norm(f) != 0:
        return False, None
    Q, _ = quotient_by_isotropic(S, f)
    return True, Q


def u_plus(K: Lattice, m: int = 1) -> tuple[Lattice, list[int]]:
    """U(m) + K and the isotropic generator of U(m)."""
    S = direct_sum(hyperbolic_plane(m), K, label=f"U({m})+K" if m != 1 else "U+K")
    return S, [1, 0] + [0] * K.rank


def analyze_complement(K: Lattice, p: int, R_N: ADEType | str) -> FibrationClass:
    if p not in (2, 3):
        raise ValueError("p must be 2 or 3")
    if not (K.is_even and K.rank == 20 and K.is_negative_definite()):
        raise PreconditionError("not an even negative definite rank-20 lattice", f"{K!r}")
    if abs(K.det) != p * p:
        raise PreconditionError("wrong discriminant", f"|disc K| = {abs(K.det)}")
    if isinstance(R_N, str):
        R_N = ADEType.parse(R_N)
    _, rphi = root_sublattice(K)
    torsion, rank = mordell_weil(K)
    Kd = dual_rescale_p(K, p)
    _, rpp = root_sublattice(Kd)
    return FibrationClass(R_N, rphi, torsion, rank, rpp,
                          is_quasi_elliptic(K, p), is_quasi_elliptic(Kd, p), K)


def _all_root_types() -> list[str]:
    return list(TABLE_ORDER[3])


def generate_table(p: int) -> list[FibrationClass]:
    """All fibration classes for characteristic p from the Niemeier lattices."""
    if p not in (2, 3):
        raise ValueError("p must be 2 or 3")
    return list(_table(p))


@cache
def _table(p: int) -> tuple:
    T = T_FOR_PRIME[p]
    order = TABLE_ORDER[p] + [t for t in _all_root_types() if t not in TABLE_ORDER[p]]
    rows: list[FibrationClass] = []
    for name in order:
        N = build_niemeier(name)
        for emb in find_embeddings(N, T):
            row = analyze_complement(emb.K, p, N.spec.root_type)
            # the two independent computations must agree
            if row.key()[1:] != (str(emb.fiber_type), emb.mw_torsion, emb.mw_rank,
                                 str(emb.dual_fiber_type)):
                raise RuntimeError(f"inconsistent invariants for {name}: {row.key()}")
            rows.append(row)
    pos = {name: i for i, name in enumerate(order)}
    rows.sort(key=lambda r: (pos[str(r.niemeier_type)], str(r.fiber_type_sigma1)))
    return tuple(rows)


def golden_rows(p: int) -> list[tuple]:
    return [(str(ADEType.parse(a)), str(ADEType.parse(b)), c, d, str(ADEType.parse(e)))
            for a, b, c, d, e in GOLDEN[p]]


FIELD_NAMES = ("R_N", "R_phi", "MW_tor", "MW_rank", "R_phi_prime")


def compare_with_golden(rows: Sequence[FibrationClass], p: int) -> Optional[str]:
    """None if the rows match the reference table, otherwise a description
    naming the first differing field.  Order inside one R_N group is ignored.
    """
    got = [r.key() for r in rows]
    want = golden_rows(p)
    if len(got) != len(want):
        return f"row count: computed {len(got)}, expected {len(want)}"
    groups_got: dict = {}
    groups_want: dict = {}
    for k in got:
        groups_got.setdefault(k[0], []).append(k)
    for k in want:
        groups_want.setdefault(k[0], []).append(k)
    for rn in list(dict.fromkeys([k[0] for k in want] + [k[0] for k in got])):
        g = sorted(groups_got.get(rn, []))
        w = sorted(groups_want.get(rn, []))
        if len(g) != len(w):
            return f"R_N={rn}: computed {len(g)} rows, expected {len(w)}"
        for a, b in zip(g, w):
            for name, x, y in zip(FIELD_NAMES, a, b):
                if x != y:
                    return f"R_N={rn}, R_phi={b[1]}: field {name} computed {x!r}, expected {y!r}"
    return None
