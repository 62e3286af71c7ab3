from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from k3lattice.lattice import (
    DegenerateError, Lattice, LatticeError, PreconditionError, Sublattice, classify,
    direct_sum, discriminant_form, dual, dual_rescale_p, is_primitive, is_type_I,
    orthogonal_complement, overlattice_from_glue, quotient_by_isotropic, rescale, signature,
)
from k3lattice.roots import root_lattice

U = Lattice([[0, 1], [1, 0]])


def test_basic_properties():
    A2 = root_lattice("A2")
    assert [list(r) for r in A2.gram] == [[-2, 1], [1, -2]]
    assert A2.det == 3 and A2.is_even and A2.is_negative_definite()
    assert U.signature == (1, 1) and U.is_hyperbolic()
    assert Lattice([[1, 0], [0, 2]]).is_integral and not Lattice([[1, 0], [0, 2]]).is_even


def test_degenerate_dual_raises():
    with pytest.raises(DegenerateError):
        dual(Lattice([[0, 0], [0, 0]]))


def test_rejects_asymmetric():
    with pytest.raises(LatticeError):
        Lattice([[1, 2], [3, 4]])


def test_json_round_trip():
    L = Lattice([[Fraction(-3, 2), 1], [1, -2]])
    data = L.to_json()
    assert data["rank"] == 2
    assert data["gram"][0][0] == "-3/2"
    assert Lattice.from_json(data) == L


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n),
                                                    min_size=n, max_size=n)))
def test_signature_matches_eigenvalue_count(A):
    import numpy as np
    G = [[A[i][j] + A[j][i] for j in range(len(A))] for i in range(len(A))]
    ev = np.linalg.eigvalsh(np.array(G, dtype=float))
    if any(abs(x) < 1e-9 for x in ev):
        return
    assert signature(G) == (int((ev > 0).sum()), int((ev < 0).sum()))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n),
                                                    min_size=n, max_size=n)),
       st.integers(1, 6))
def test_dual_and_rescale_identities(A, m):
    G = [[A[i][j] + A[j][i] for j in range(len(A))] for i in range(len(A))]
    L = Lattice(G)
    if L.det == 0:
        return
    assert dual(dual(L)) == L
    assert rescale(rescale(L, m), Fraction(1, m)) == L
    assert dual(rescale(L, m)) == rescale(dual(L), Fraction(1, m))
    assert dual(L).det == Fraction(1) / L.det


@pytest.mark.parametrize("name,p", [("A2", 3), ("2A2", 3), ("E6", 3), ("D4", 2), ("A1", 2), ("E7", 2)])
def test_dual_rescale_round_trip(name, p):
    L = root_lattice(name)
    if p == 2 and not is_type_I(L):
        with pytest.raises(PreconditionError):
            dual_rescale_p(L, p)
        return
    D = dual_rescale_p(L, p)
    assert D.is_even and D.is_p_elementary(p)
    assert dual_rescale_p(D, p) == L
    a = len(discriminant_form(L).orders)
    assert abs(D.det) == p ** (L.rank - a)


def test_dual_rescale_preconditions():
    with pytest.raises(PreconditionError) as e:
        dual_rescale_p(root_lattice("A2"), 2)
    assert "2-elementary" in str(e.value)
    with pytest.raises(PreconditionError):
        dual_rescale_p(Lattice([[1]]), 3)
    # A1 is 2-elementary but its discriminant value is -1/2, not in Z/2Z
    with pytest.raises(PreconditionError) as e:
        dual_rescale_p(root_lattice("A1"), 2)
    assert "type I" in str(e.value)


def test_discriminant_forms():
    D = discriminant_form(root_lattice("A2"))
    assert D.orders == (3,)
    assert D.q_values == (Fraction(4, 3),)         # -2/3 mod 2
    D4 = discriminant_form(root_lattice("D4"))
    assert D4.orders == (2, 2)
    assert sorted(D4.q((a, b)) for a, b in D4.elements()) == [0, 1, 1, 1]
    assert discriminant_form(root_lattice("E8")).orders == ()
    assert discriminant_form(U).orders == ()
    E6 = discriminant_form(root_lattice("E6"))
    assert E6.orders == (3,) and E6.q_values == (Fraction(2, 3),)


def test_class_of_consistent_with_representatives():
    L = root_lattice("D5")
    D = discriminant_form(L)
    for e in D.elements():
        assert D.class_of(D.representative(e)) == e


def test_classify_profile():
    prof = classify(direct_sum(U, root_lattice("E8"), root_lattice("A2")))
    assert prof.rank == 12 and prof.even and prof.signature == (1, 11)
    assert prof.elementary_prime == 3 and prof.discriminant == -3
    assert prof.lines()[0] == "rank\t12"


def test_type_I():
    assert is_type_I(root_lattice("D4"))
    assert not is_type_I(root_lattice("A1"))
    assert is_type_I(root_lattice("2A1")) is False
    assert is_type_I(Lattice([[0, 2], [2, 0]]))          # U(2)
    assert not is_type_I(direct_sum(root_lattice("A1"), Lattice([[2]])))


def test_orthogonal_complement_in_E8():
    E8 = root_lattice("E8")
    S = Sublattice(E8, [[1, 0, 0, 0, 0, 0, 0, 0]])
    C = orthogonal_complement(S)
    assert C.rank == 7
    assert is_primitive(C)
    # complement of a root in E8 is E7
    assert abs(C.lattice().det) == 2


def test_quotient_by_isotropic():
    L = direct_sum(U, root_lattice("A2"))
    Q, rest = quotient_by_isotropic(L, [1, 0, 0, 0])
    assert Q.rank == 2 and Q.det == 3


def test_overlattice_from_glue_builds_E8_from_D8():
    D8 = root_lattice("D8")
    inv = D8.inverse_gram
    # spinor class: row of the inverse Cartan matrix for the last node
    glue = [[-x for x in inv[7]]]
    M, basis = overlattice_from_glue(D8, glue)
    assert abs(M.det) == 1 and M.is_even


def test_overlattice_rejects_non_dual():
    with pytest.raises(LatticeError):
        overlattice_from_glue(root_lattice("A2"), [[Fraction(1, 2), 0]])
