from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from k3lattice import exact as ex
from k3lattice.lattice import Lattice, direct_sum
from k3lattice.roots import (
    ADEType, NotDefiniteError, ade_classify, cartan_matrix, count_vectors_of_norm,
    identify_component, iter_short_vectors, root_lattice, root_set, root_sublattice,
    vectors_of_norm,
)

IRREDUCIBLE_UP_TO_8 = [f"A{k}" for k in range(1, 9)] + [f"D{k}" for k in range(4, 9)] + ["E6", "E7", "E8"]


def _rank(t):
    return int(t[1:])


def _all_types_up_to(rank_bound):
    out = set()

    def rec(start, remaining, acc):
        if acc:
            out.add(" + ".join(acc))
        for i in range(start, len(IRREDUCIBLE_UP_TO_8)):
            t = IRREDUCIBLE_UP_TO_8[i]
            if _rank(t) <= remaining:
                rec(i, remaining - _rank(t), acc + [t])

    rec(0, rank_bound, [])
    return sorted(out)


def _box_count(G, bound, box):
    """Brute force: #{x : x^T G x <= bound} for positive definite G."""
    n = len(G)
    c = 0
    for x in product(range(-box, box + 1), repeat=n):
        if any(x) and ex.bilinear(x, G, x) <= bound:
            c += 1
    return c


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3).flatmap(lambda n: st.lists(st.lists(st.integers(-2, 2), min_size=n, max_size=n),
                                                    min_size=n, max_size=n)),
       st.integers(1, 12))
def test_short_vectors_match_box_search(A, bound):
    n = len(A)
    if ex.det_exact(A) == 0:
        return
    G = ex.mat_mul(ex.transpose(A), A)
    # x^T G x = |A x|^2 >= |x|^2 / |A^{-1}|^2; bound the box by the inverse
    inv = ex.inverse(A)
    scale = max(sum(abs(ex.to_fraction(v)) for v in row) for row in inv)
    box = int(scale * (bound ** 0.5)) + 1
    if (2 * box + 1) ** n > 20000:
        return
    ours = {v for v in iter_short_vectors(G, bound) if any(v)}
    assert len(ours) == _box_count(G, bound, box)
    for v in ours:
        assert ex.bilinear(v, G, v) <= bound


def test_short_vectors_with_centre():
    G = [[2, 1], [1, 2]]
    centre = [ex.to_fraction("1/3"), ex.to_fraction("1/3")]
    got = sorted(iter_short_vectors(G, 2, centre=centre))
    want = sorted(x for x in product(range(-4, 5), repeat=2)
                  if ex.bilinear([a - c for a, c in zip(x, centre)], G, [a - c for a, c in zip(x, centre)]) <= 2)
    assert got == want


def test_not_definite():
    with pytest.raises(NotDefiniteError):
        list(iter_short_vectors([[1, 0], [0, -1]], 2))


@pytest.mark.parametrize("text", _all_types_up_to(8))
def test_ade_round_trip(text):
    t = ADEType.parse(text)
    L = root_lattice(t)
    R = root_set(L)
    assert len(R.vectors) == t.root_count
    assert ade_classify(R) == t
    assert str(t) == str(ADEType.parse(str(t)))


@pytest.mark.parametrize("name,count", [("A1", 2), ("A2", 6), ("D4", 24), ("E6", 72), ("E7", 126),
                                        ("E8", 240), ("D24", 1104), ("A24", 600)])
def test_root_counts(name, count):
    assert ADEType.parse(name).root_count == count


def test_e8_root_count_by_enumeration():
    assert count_vectors_of_norm(root_lattice("E8"), -2) == 240
    assert count_vectors_of_norm(root_lattice("E8"), -4) == 2160


def test_canonical_string():
    assert str(ADEType.parse("E6 + 2A1 + D4 + A1")) == "3A1 + D4 + E6"
    assert str(ADEType()) == "0"
    assert str(ADEType.parse("0")) == "0"
    with pytest.raises(ValueError):
        ADEType.parse("B3")


def test_identify_component():
    assert identify_component(4, 24, 4) == ("D", 4)
    assert identify_component(6, 72, 3) == ("E", 6)
    assert identify_component(3, 12, 4) == ("A", 3)   # A3 = D3


def test_cartan_matrix_E6_det():
    assert ex.det_exact(cartan_matrix("E", 6)) == 3
    assert ex.det_exact(cartan_matrix("D", 5)) == 4


def test_root_sublattice_of_mixed_lattice():
    L = direct_sum(root_lattice("A2"), root_lattice("D4"), Lattice([[-6]]))
    sub, t = root_sublattice(L)
    assert str(t) == "A2 + D4"
    assert sub.rank == 6


def test_vectors_of_norm_sorted_and_symmetric():
    vs = vectors_of_norm(root_lattice("A3"), -2)
    assert vs == sorted(vs)
    assert set(vs) == {tuple(-x for x in v) for v in vs}
