"""Rank-22 lattice models built from finite geometry.

* Characteristic 2: the plane P^2(F_4), with classes h, e_1..e_21 and the
  half-integral classes f_i = (h - sum of e_j over points on line i) / 2.
* Characteristic 3: the 112 lines on x0^4 + x1^4 + x2^4 + x3^4 = 0 over F_9.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import exact as ex
from .fields import GF, projective_points
from .lattice import Lattice, classify, vector_to_json


class ModelVerificationError(RuntimeError):
    pass


def _require(cond: bool, what: str) -> None:
    if not cond:
        raise ModelVerificationError(what)


@dataclass
class IncidencePlane:
    points: list
    lines: list
    incidence: list   # incidence[i][j]: point j lies on line i

    def points_on(self, i: int) -> list[int]:
        return [j for j, b in enumerate(self.incidence[i]) if b]

    def lines_through(self, j: int) -> list[int]:
        return [i for i in range(len(self.lines)) if self.incidence[i][j]]


def build_p2_f4() -> IncidencePlane:
    F = GF(2, 2, c=1)
    pts = projective_points(F, 2)
    lines = list(pts)  # dual coordinates
    inc = [[F.dot(l, p) == 0 for p in pts] for l in lines]
    return IncidencePlane(pts, lines, inc)


def general_six_point_sets(P: IncidencePlane) -> list[tuple]:
    """6-subsets of points with no three on a line, sorted."""
    n = len(P.points)
    line_of = {}
    for i in range(len(P.lines)):
        on = P.points_on(i)
        for a, b in combinations(on, 2):
            line_of[(a, b)] = i
    out = []
    for S in combinations(range(n), 6):
        used = set()
        ok = True
        for a, b in combinations(S, 2):
            l = line_of[(a, b)]
            if l in used:
                ok = False
                break
            used.add(l)
        if ok:
            out.append(S)
    return out


@dataclass
class SurfaceLatticeModel:
    p: int
    lattice: Lattice
    basis: list                 # lattice basis in ambient coordinates
    classes: dict = field(default_factory=dict)   # name -> lattice coordinates
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = self.lattice.to_json()
        out["classes"] = {k: vector_to_json(v) for k, v in self.classes.items()}
        return out


def _coords_in(basis: Sequence[Sequence], v: Sequence) -> list:
    """Coordinates of v in the row basis (square, invertible)."""
    return [ex.normalize(x) for x in ex.vec_mat(list(v), ex.inverse(basis))]


def _span_model(p: int, ambient_gram, generators) -> tuple[Lattice, list, list]:
    basis = ex.row_lattice_basis(generators)
    G = ex.mat_mul(ex.mat_mul(basis, ambient_gram), ex.transpose(basis))
    return Lattice(G, label=f"S({p},1)"), basis, ex.inverse(basis)


def build_S21() -> SurfaceLatticeModel:
    P = build_p2_f4()
    n = 21
    amb = [[0] * (n + 1) for _ in range(n + 1)]
    amb[0][0] = 2
    for i in range(1, n + 1):
        amb[i][i] = -2
    e = [[1 if k == i + 1 else 0 for k in range(n + 1)] for i in range(n)]
    f = []
    for i in range(n):
        v = [Fraction(1, 2)] + [Fraction(-1, 2) if P.incidence[i][j] else Fraction(0) for j in range(n)]
        f.append(v)
    L, basis, binv = _span_model(2, amb, e + f)
    coords = lambda v: [ex.normalize(x) for x in ex.vec_mat(list(v), binv)]
    classes = {"h": coords([1] + [0] * n)}
    for i in range(n):
        classes[f"e{i + 1}"] = coords(e[i])
    for i in range(n):
        classes[f"f{i + 1}"] = coords(f[i])
    w = [Fraction(7, 2)] + [Fraction(-1, 2)] * n
    classes["w_M"] = coords(w)
    sixes = general_six_point_sets(P)
    c_vectors = []
    for I in sixes:
        v = [Fraction(1)] + [Fraction(-1, 2) if j in I else Fraction(0) for j in range(n)]
        c_vectors.append(coords(v))
    model = SurfaceLatticeModel(2, L, basis, classes,
                                {"plane": P, "six_sets": sixes, "c_vectors": c_vectors})
    verify_S21(model)
    return model


def verify_S21(m: SurfaceLatticeModel) -> None:
    L = m.lattice
    prof = classify(L)
    _require(L.rank == 22, "rank 22")
    _require(prof.even, "even")
    _require(prof.signature == (1, 21), "hyperbolic")
    _require(prof.elementary_prime == 2, "2-elementary")
    _require(prof.type_I, "type I")
    _require(L.det == -4, f"discriminant -4 (got {L.det})")
    P = m.extra["plane"]
    for i in range(21):
        fi = m.classes[f"f{i + 1}"]
        _require(L.norm(fi) == -2, "f_i^2 = -2")
        for j in range(21):
            want = 1 if P.incidence[i][j] else 0
            _require(L.inner(fi, m.classes[f"e{j + 1}"]) == want, "<f_i, e_j>")
        for k in range(i + 1, 21):
            _require(L.inner(fi, m.classes[f"f{k + 1}"]) == 0, "<f_i, f_k> = 0")
    w = m.classes["w_M"]
    _require(all(isinstance(x, int) for x in w), "w_M in S")
    _require(L.norm(w) == 14, "w_M^2 = 14")
    for i in range(21):
        _require(L.inner(w, m.classes[f"e{i + 1}"]) == 1, "<w_M, e_i> = 1")
        _require(L.inner(w, m.classes[f"f{i + 1}"]) == 1, "<w_M, f_i> = 1")
    _require(len(m.extra["c_vectors"]) == 168, "168 general six-point sets")
    for c in m.extra["c_vectors"]:
        _require(L.norm(c) == -1, "c_I^2 = -1")
        _require(ex.is_integral([ex.vec_mat(c, L.gram)]), "c_I in the dual")


# ------------------------------------------------------------ Fermat quartic

def _fermat_lines(F: GF) -> tuple[list, list]:
    pts = projective_points(F, 3)
    def on_surface(v):
        s = 0
        for x in v:
            s = F.add(s, F.pow(x, 4))
        return s == 0
    surf = [v for v in pts if on_surface(v)]
    surf_set = set(surf)
    lines = set()
    for a, b in combinations(surf, 2):
        # all points of the line through a, b
        line = {a, b}
        for s in F.elements:
            if s:
                line.add(F.normalize_projective(F.add_vec(a, F.scale_vec(s, b))))
        if line <= surf_set:
            lines.add(frozenset(line))
    lines = sorted(tuple(sorted(l)) for l in lines)
    return surf, lines


def _independent_rows(G: list[list[int]], r: int) -> list[int]:
    chosen: list[int] = []
    for i in range(len(G)):
        if ex.rank([G[j] for j in chosen + [i]]) == len(chosen) + 1:
            chosen.append(i)
            if len(chosen) == r:
                break
    return chosen


def _plane_of(F: GF, pts: Sequence[tuple]) -> tuple:
    ns = F.nullspace([list(p) for p in pts])
    if len(ns) != 1:
        raise ValueError("points do not span a plane")
    return F.normalize_projective(ns[0])


def build_S31() -> SurfaceLatticeModel:
    F = GF(3, 2, c=0)
    surf, lines = _fermat_lines(F)
    nl = len(lines)
    sets = [set(l) for l in lines]
    G = [[-2 if i == j else (1 if sets[i] & sets[j] else 0) for j in range(nl)] for i in range(nl)]
    chosen = _independent_rows(G, 22)
    _require(len(chosen) == 22, "line classes span rank 22")
    Gbb = [[G[i][j] for j in chosen] for i in chosen]
    Gbb_inv = ex.inverse(Gbb)
    # each line in the chosen (rational) basis
    line_coords = [ex.vec_mat([G[k][j] for j in chosen], Gbb_inv) for k in range(nl)]
    L, basis, binv = _span_model(3, Gbb, line_coords)
    coords = lambda v: [ex.normalize(x) for x in ex.vec_mat(list(v), binv)]
    classes = {f"l{k + 1}": coords(line_coords[k]) for k in range(nl)}
    # a plane containing four lines: a totally split hyperplane section
    plane_lines = None
    for i in range(nl):
        for j in range(i + 1, nl):
            if not sets[i] & sets[j]:
                continue
            a = lines[i][0] if lines[i][0] not in sets[j] else lines[i][1]
            H = _plane_of(F, [a, lines[j][0], lines[j][1]])
            inside = [k for k in range(nl) if all(F.dot(H, x) == 0 for x in lines[k])]
            if len(inside) == 4:
                plane_lines = inside
                break
        if plane_lines:
            break
    _require(plane_lines is not None, "a plane containing four lines")
    h = [sum(classes[f"l{k + 1}"][t] for k in plane_lines) for t in range(22)]
    classes["h_FQ"] = h
    model = SurfaceLatticeModel(3, L, basis, classes,
                                {"lines": lines, "surface_points": surf, "plane_lines": plane_lines,
                                 "intersection_matrix": G})
    verify_S31(model)
    return model


def verify_S31(m: SurfaceLatticeModel) -> None:
    L = m.lattice
    prof = classify(L)
    lines = m.extra["lines"]
    _require(len(lines) == 112, f"112 lines (got {len(lines)})")
    _require(L.rank == 22, "rank 22")
    _require(prof.even, "even")
    _require(prof.signature == (1, 21), "hyperbolic")
    _require(prof.elementary_prime == 3, "3-elementary")
    _require(L.det == -9, f"discriminant -9 (got {L.det})")
    G = m.extra["intersection_matrix"]
    ls = [m.classes[f"l{k + 1}"] for k in range(112)]
    for i in range(112):
        _require(all(isinstance(x, int) for x in ls[i]), "line classes in S")
        for j in range(i, 112):
            _require(L.inner(ls[i], ls[j]) == G[i][j], "intersection numbers")
    h = m.classes["h_FQ"]
    _require(L.norm(h) == 4, "h_FQ^2 = 4")
    _require(all(L.inner(h, l) == 1 for l in ls), "<h_FQ, l_i> = 1")
    total = [sum(l[t] for l in ls) for t in range(22)]
    _require(total == [28 * x for x in h], "28 h_FQ = sum of lines")
