"""Reflections, Weyl reduction and chamber wall checks in hyperbolic lattices."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from . import exact as ex
from .lattice import Lattice, LatticeError, vector_from_json
from .roots import iter_short_vectors


class ConeError(LatticeError):
    pass


def reflect(S: Lattice, x: Sequence, r: Sequence) -> list:
    """s_r(x) = x + <x, r> r for a root r."""
    if S.norm(r) != -2:
        raise LatticeError(f"{list(r)} is not a root (norm {S.norm(r)})")
    k = S.inner(x, r)
    return [ex.normalize(ex.to_fraction(a) + k * b) for a, b in zip(x, r)]


def _check_cone(S: Lattice, a: Sequence, v: Sequence) -> None:
    if S.norm(a) <= 0:
        raise ConeError("a must have positive norm")
    if S.norm(v) < 0:
        raise ConeError("v must have nonnegative norm")
    if any(v) and S.inner(a, v) <= 0:
        raise ConeError("a and v lie in opposite cones")


def separating_roots(S: Lattice, a: Sequence[int], v: Sequence[int]) -> list[tuple]:
    """All roots r with <a, r> > 0 > <v, r>, sorted.

    With s = <a, r>, t = <v, r> the projection of r to P = span(a, v) has
    norm (C s^2 - 2B s t + A t^2) / det, which must be >= -2 since the
    complement of P is negative definite.  That bounds (s, t); for each
    pair the roots form a close-vector problem in P^perp.
    """
    _check_cone(S, a, v)
    if not any(v):
        return []
    A, B, C = S.norm(a), S.inner(a, v), S.norm(v)
    det = A * C - B * B
    if det == 0:
        return []  # v is a positive multiple of a
    if det > 0:
        raise ConeError("span(a, v) is not hyperbolic")
    n = S.rank
    Ga = ex.vec_mat(list(a), S.gram)
    Gv = ex.vec_mat(list(v), S.gram)
    lin = ex.transpose([Ga, Gv])          # n x 2, r . lin = (s, t)
    Mb = ex.integer_left_kernel(lin)      # basis of P^perp in S
    GM = ex.mat_mul(ex.mat_mul(Mb, S.gram), ex.transpose(Mb))
    if Mb:
        Qr, H = ex.lll_gram([[-x for x in row] for row in GM])
        Mb = ex.mat_mul(H, Mb)
    else:
        Qr = []
    D = -det
    out = []
    s = 1
    while C * s * s + 2 * B * s <= 2 * D:
        t = 1
        while C * s * s + 2 * B * s * t + A * t * t <= 2 * D:
            tt = -t
            # r_P = alpha a + beta v with Gram (alpha, beta) = (s, tt)
            alpha = Fraction(C * s - B * tt, det)
            beta = Fraction(A * tt - B * s, det)
            pnorm = Fraction(C * s * s - 2 * B * s * tt + A * tt * tt, det)
            sol = ex.kernel_and_solve(ex.transpose(lin), [s, tt])
            if sol.integer_solution is not None:
                r0 = sol.integer_solution
                q = [r0[i] - alpha * a[i] - beta * v[i] for i in range(n)]
                budget = -2 - pnorm   # required (q + m)^2, <= 0
                if Mb:
                    y0 = ex.kernel_and_solve_rational(ex.transpose(Mb), q)
                    for y in iter_short_vectors(Qr, -budget, centre=[-c for c in y0], exact=True):
                        r = [r0[i] + sum(y[k] * Mb[k][i] for k in range(len(y))) for i in range(n)]
                        out.append(tuple(r))
                elif budget == 0:
                    out.append(tuple(r0))
            t += 1
        s += 1
    out = sorted(set(out))
    for r in out:
        assert S.norm(r) == -2 and S.inner(a, r) > 0 > S.inner(v, r)
    return out


def weyl_reduce(S: Lattice, a: Sequence[int], v: Sequence[int]) -> tuple[list, list]:
    """Reflect v until no root separates it from a; returns (v', word)."""
    _check_cone(S, a, v)
    v = list(v)
    word = []
    while True:
        R = separating_roots(S, a, v)
        if not R:
            return v, word
        r = min(R, key=lambda r: (S.inner(v, r), r))
        v = reflect(S, v, r)
        word.append(r)


def apply_word(S: Lattice, v: Sequence, word: Sequence[Sequence[int]]) -> list:
    for r in word:
        v = reflect(S, v, r)
    return list(v)


# ------------------------------------------------------------------ chambers

@dataclass
class ChamberSpec:
    ambient: Lattice
    delta: list
    base: list

    @classmethod
    def from_json(cls, data: dict) -> "ChamberSpec":
        L = Lattice.from_json(data["lattice"])
        delta = [vector_from_json(v) for v in data["delta"]]
        base = vector_from_json(data["base"])
        for v in delta + [base]:
            if len(v) != L.rank:
                raise LatticeError("vector length does not match the lattice rank")
        return cls(L, delta, base)


def interior_point_check(C: ChamberSpec, x: Sequence) -> bool:
    return all(C.ambient.inner(x, v) > 0 for v in C.delta)


@dataclass
class WallVerdict:
    is_wall: bool
    duplicates: list            # indices of identical copies of v in delta
    certificate: Optional[list]  # x with <x,v> < 0 <= <x,v'> for the others, when found
    method: str


def phase_one(A: list[list], b: list) -> Optional[list[Fraction]]:
    """A point y >= 0 with A y = b, or None; exact simplex with Bland's rule."""
    m = len(A)
    n = len(A[0]) if A else 0
    T = []
    for i in range(m):
        sign = -1 if b[i] < 0 else 1
        row = [Fraction(sign * x) for x in A[i]]
        row += [Fraction(1 if k == i else 0) for k in range(m)]
        row.append(Fraction(sign * b[i]))
        T.append(row)
    ncol = n + m
    basis = [n + i for i in range(m)]
    obj = [Fraction(0)] * (ncol + 1)
    for i in range(m):
        for j in range(n):
            obj[j] -= T[i][j]
        obj[-1] -= T[i][-1]
    while True:
        enter = next((j for j in range(ncol) if obj[j] < 0), None)
        if enter is None:
            break
        best = None
        for i in range(m):
            if T[i][enter] > 0:
                ratio = T[i][-1] / T[i][enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        i = best[1]
        piv = T[i][enter]
        T[i] = [x / piv for x in T[i]]
        for k in range(m):
            if k != i and T[k][enter] != 0:
                f = T[k][enter]
                T[k] = [x - f * y for x, y in zip(T[k], T[i])]
        f = obj[enter]
        obj = [x - f * y for x, y in zip(obj, T[i])]
        basis[i] = enter
    if obj[-1] != 0:
        return None
    y = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            y[j] = T[i][-1]
    return y


def wall_verdict(C: ChamberSpec, v: Union[int, Sequence]) -> WallVerdict:
    if isinstance(v, int):
        if not 0 <= v < len(C.delta):
            raise LatticeError(f"no delta member with index {v}")
        idx = v
        v = C.delta[v]
    else:
        v = [ex.normalize(ex.to_fraction(x)) for x in v]
        if v not in C.delta:
            raise LatticeError("vector is not a member of delta")
        idx = C.delta.index(v)
    S = C.ambient
    dups = [i for i, w in enumerate(C.delta) if w == v and i != idx]
    others = [w for w in C.delta if w != v]
    Gv = ex.vec_mat(list(v), S.gram)
    Gothers = [ex.vec_mat(list(w), S.gram) for w in others]
    vv = ex.to_fraction(S.norm(v))
    # fast certificate: project the base point onto v^perp and step across
    w = C.base
    if vv != 0:
        x0 = [ex.to_fraction(wi) - ex.to_fraction(S.inner(w, v)) / vv * ex.to_fraction(vi)
              for wi, vi in zip(w, v)]
        p0 = [ex.to_fraction(ex.dot(x0, g)) for g in Gothers]
        if all(p > 0 for p in p0):
            pv = [ex.to_fraction(ex.dot(v, g)) for g in Gothers]
            eps = Fraction(1)
            for p, q in zip(p0, pv):
                if q < 0:
                    eps = min(eps, p / -q)
            # <x, v> = eps * v^2 must be negative
            step = eps if vv < 0 else -eps
            x = [a + step * ex.to_fraction(b) for a, b in zip(x0, v)]
            if ex.dot(x, Gv) < 0 and all(ex.dot(x, g) >= 0 for g in Gothers):
                return WallVerdict(True, dups, [ex.normalize(t) for t in x], "projection")
    # Farkas: no such x exists iff v is a nonnegative combination of the others
    # (the form is nondegenerate, so pairings may be replaced by coordinates)
    if not others:
        return WallVerdict(True, dups, None, "cone")
    A = [[ex.to_fraction(w[j]) for w in others] for j in range(S.rank)]
    mu = phase_one(A, [ex.to_fraction(x) for x in v])
    if mu is not None:
        assert all(sum(mu[k] * ex.to_fraction(others[k][j]) for k in range(len(others))) == v[j]
                   for j in range(S.rank))
        return WallVerdict(False, dups, None, "cone")
    return WallVerdict(True, dups, None, "cone")


def wall_check(C: ChamberSpec, v: Union[int, Sequence]) -> bool:
    return wall_verdict(C, v).is_wall


def chamber_of_S21(model) -> ChamberSpec:
    """Delta(X_{2,1}): the e_i, f_i and c_I, with base point w_M."""
    cl = model.classes
    delta = [cl[f"e{i + 1}"] for i in range(21)] + [cl[f"f{i + 1}"] for i in range(21)]
    delta += [list(c) for c in model.extra["c_vectors"]]
    return ChamberSpec(model.lattice, delta, cl["w_M"])
