from collections import Counter
from itertools import product

import pytest

from k3lattice.fields import GF, projective_points, smallest_irreducible_c
from k3lattice.lattice import classify, dual_rescale_p, dual_coverage
from k3lattice.roots import root_lattice
from k3lattice.surfaces import build_p2_f4, general_six_point_sets


@pytest.mark.parametrize("p,c", [(2, 1), (3, 0), (5, 1), (7, 0), (11, 0), (13, 3)])
def test_smallest_irreducible_c(p, c):
    assert smallest_irreducible_c(p) == c


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_field_axioms(p):
    F = GF(p, 2)
    els = list(F.elements)
    for a in els:
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
        assert F.frobenius(F.frobenius(a)) == a
        assert (F.frobenius(a) == a) == F.in_prime_field(a)
    # alpha is a root of t^2 + c t + 1
    a = F.alpha
    assert F.add(F.add(F.mul(a, a), F.mul(F.c, a)), 1) == 0
    for a, b in product(els[:10], repeat=2):
        assert F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b))
        assert F.frobenius(F.mul(a, b)) == F.mul(F.frobenius(a), F.frobenius(b))


def test_sqrt():
    F = GF(7)
    for a in range(7):
        r = F.sqrt(a)
        assert (r is not None) == F.is_square(a)
        if r is not None:
            assert F.mul(r, r) == a


def test_projective_counts():
    assert len(projective_points(GF(2, 2, c=1), 2)) == 21
    assert len(projective_points(GF(3, 2), 3)) == 820


def test_p2_f4_incidence():
    P = build_p2_f4()
    assert len(P.points) == 21 and len(P.lines) == 21
    assert {len(P.points_on(i)) for i in range(21)} == {5}
    assert {len(P.lines_through(j)) for j in range(21)} == {5}


def test_six_point_sets():
    P = build_p2_f4()
    sixes = general_six_point_sets(P)
    assert len(sixes) == 168
    # each point lies in 168 * 6 / 21 = 48 of them (PGL(3,4) acts transitively)
    assert set(Counter(x for S in sixes for x in S).values()) == {48}


def test_s21_model(s21):
    L = s21.lattice
    assert L.rank == 22 and L.det == -4
    assert L.norm(s21.classes["w_M"]) == 14


def test_s31_model(s31):
    L = s31.lattice
    assert L.det == -9
    assert len(s31.extra["lines"]) == 112
    assert len(s31.extra["surface_points"]) == 280
    h = s31.classes["h_FQ"]
    total = [sum(s31.classes[f"l{k + 1}"][t] for k in range(112)) for t in range(22)]
    assert total == [28 * x for x in h]


def test_s31_each_line_meets_thirty_others(s31):
    # 10 points per line, 3 further lines through each point
    G = s31.extra["intersection_matrix"]
    assert {sum(1 for x in row if x == 1) for row in G} == {30}


def test_dual_coverage_D4():
    counts = dual_coverage(root_lattice("D4"), -1)
    assert sum(counts.values()) == 24
    assert all(counts[e] == 8 for e in counts if any(e))


def test_models_dual_rescale(s21, s31):
    for m, p in ((s21, 2), (s31, 3)):
        D = dual_rescale_p(m.lattice, p)
        prof = classify(D)
        assert prof.discriminant == -p ** 20
        assert dual_rescale_p(D, p) == m.lattice
