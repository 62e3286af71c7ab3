from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from k3lattice import finite_quadratic as fq
from k3lattice.fields import GF
from k3lattice.lattice import Lattice, PreconditionError, dual_rescale_p
from k3lattice.roots import root_lattice


def test_space_from_A2():
    V = fq.quadratic_space_from_lattice(root_lattice("A2"), 3)
    assert V.dim == 1 and V.q([1]) == 1


def test_space_from_unimodular():
    assert fq.quadratic_space_from_lattice(Lattice([[0, 1], [1, 0]]), 3).dim == 0


def test_space_requires_p_elementary():
    with pytest.raises(PreconditionError):
        fq.quadratic_space_from_lattice(root_lattice("A2"), 5)
    with pytest.raises(PreconditionError):
        fq.quadratic_space_from_lattice(root_lattice("A8"), 3)   # discriminant Z/9


def test_rank22_models_non_neutral(s31):
    V = fq.quadratic_space_from_lattice(s31.lattice, 3)
    assert V.dim == 2 and fq.classify_form(V) == "non-neutral"
    W = fq.quadratic_space_from_lattice(dual_rescale_p(s31.lattice, 3), 3)
    assert W.dim == 20 and fq.classify_form(W) == "non-neutral"


def test_classify_basic_forms():
    assert fq.classify_form(fq.FiniteQuadraticSpace(3, [[0, 2], [2, 0]])) == "neutral"   # x1 x2
    assert fq.classify_form(fq.FiniteQuadraticSpace(3, [[1, 0], [0, 1]])) == "non-neutral"
    with pytest.raises(ValueError):
        fq.classify_form(fq.FiniteQuadraticSpace(3, [[1]]))
    with pytest.raises(ValueError):
        fq.FiniteQuadraticSpace(3, [[1, 1], [1, 1]])


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([3, 5, 7]), st.sampled_from([2, 4]), st.data())
def test_classification_matches_isotropic_count(p, dim, data):
    A = [[data.draw(st.integers(0, p - 1)) for _ in range(dim)] for _ in range(dim)]
    G = [[(A[i][j] + A[j][i]) % p for j in range(dim)] for i in range(dim)]
    if GF(p).det(G) == 0:
        return
    V = fq.FiniteQuadraticSpace(p, G)
    count = sum(1 for x in product(range(p), repeat=dim) if any(x) and V.q(x) == 0)
    neutral = count == fq.isotropic_count(p, dim, 1)
    assert neutral or count == fq.isotropic_count(p, dim, -1)
    assert fq.classify_form(V) == ("neutral" if neutral else "non-neutral")


@pytest.mark.parametrize("p,eps", [(3, 1), (3, -1), (5, 1), (5, -1)])
def test_group_order_dim2_brute_force(p, eps):
    assert fq.brute_force_orthogonal_order(p, 2, eps) == fq.orthogonal_group_order(p, 2, eps)


def test_small_group_orders():
    assert fq.orthogonal_group_order(3, 2, -1) == 8
    assert fq.orthogonal_group_order(5, 2, -1) == 12


@pytest.mark.parametrize("eps,order", [(-1, 1440), (1, 1152)])
def test_group_order_dim4_from_reflections(eps, order):
    assert fq.reflection_group_order(3, 4, eps) == order == fq.orthogonal_group_order(3, 4, eps)


def test_group_order_large():
    n = fq.orthogonal_group_order(3, 20, -1)
    assert fq.factorization(n) == {2: 36, 3: 90, 5: 6, 7: 3, 11: 2, 13: 3, 17: 1, 19: 1, 37: 1,
                                   41: 2, 61: 1, 73: 1, 193: 1, 547: 1, 757: 1, 1093: 1, 1181: 1}
    assert str(n).startswith("7886") and len(str(n)) == 91


@pytest.mark.parametrize("p", [3, 5, 7])
@pytest.mark.parametrize("sigma", [1, 2, 3])
def test_standard_basis(p, sigma):
    B = fq.build_standard_basis(p, sigma)
    F = B.field
    assert B.c == fq.smallest_irreducible_c(p)
    for k, v in B.b.items():
        assert B.pairing(v, v) == 0
    # Frobenius swaps b_1^(+1) and b_1^(-1) and fixes the rest
    assert fq.frobenius(F, B.b[(1, 1)]) == B.b[(1, -1)]
    assert fq.frobenius(F, B.b[(1, -1)]) == B.b[(1, 1)]
    for i in range(2, sigma + 1):
        for e in (1, -1):
            assert fq.frobenius(F, B.b[(i, e)]) == B.b[(i, e)]
    half = pow(2, -1, p)
    assert B.pairing(B.b[(1, 1)], B.b[(1, -1)]) == (4 - B.c ** 2) * half % p


def test_frobenius_involution():
    F = GF(5, 2)
    for x in product(range(0, 25, 7), repeat=3):
        assert fq.frobenius(F, fq.frobenius(F, list(x))) == list(x)


def _brute_intersection_dim(B, K):
    """dim(K cap phi(K)) by listing every vector of K."""
    F = B.field
    n = len(K[0])
    in_K = set()
    for coeffs in product(F.elements, repeat=len(K)):
        v = [0] * n
        for c, k in zip(coeffs, K):
            v = F.add_vec(v, F.scale_vec(c, k))
        in_K.add(tuple(v))
    # x in K with phi^{-1}(x) in K has the same count as K cap phi(K)
    both = sum(1 for x in in_K if tuple(fq.frobenius(F, list(x))) in in_K)
    d = 0
    while F.q ** d < both:
        d += 1
    return d


def _planes(B, limit):
    """Up to ``limit`` totally isotropic 2-planes, then up to ``limit`` arbitrary ones."""
    F = B.field
    pts = [v for v in product(F.elements, repeat=4) if any(v) and F.normalize_projective(v) == v]
    iso = [v for v in pts if B.pairing(v, v) == 0]

    def collect(group, need_orthogonal):
        out = []
        for x in group:
            for y in group:
                if y > x and F.rank([x, y]) == 2 and (not need_orthogonal or B.pairing(x, y) == 0):
                    out.append([list(x), list(y)])
                    if len(out) == limit:
                        return out
        return out

    return collect(iso, True) + collect(pts[::37], False)


def _brute_totally_isotropic(B, K):
    F = B.field
    for coeffs in product(F.elements, repeat=len(K)):
        v = [0] * len(K[0])
        for c, k in zip(coeffs, K):
            v = F.add_vec(v, F.scale_vec(c, k))
        if B.pairing(v, v):
            return False
    return True


def test_is_characteristic_against_brute_force():
    B = fq.build_standard_basis(3, 2)
    verdicts = []
    for K in _planes(B, 30):
        want = _brute_totally_isotropic(B, K) and _brute_intersection_dim(B, K) == 1
        assert fq.is_characteristic(B, K) == want
        verdicts.append(want)
    assert True in verdicts and False in verdicts


def test_phi_stable_subspace_is_not_characteristic():
    B = fq.build_standard_basis(3, 2)
    assert not fq.is_characteristic(B, [[1, 0, 0, 0], [0, 0, 1, 0]])
    with pytest.raises(ValueError):
        fq.is_characteristic(B, [[1, 0, 0, 0]])


@pytest.mark.parametrize("p", [3, 5, 7])
@pytest.mark.parametrize("sigma", [1, 2, 3, 4])
def test_family(p, sigma):
    B, fam = fq.characteristic_family(p, sigma)
    assert len(fam) == 2 ** sigma
    assert len(fq.sign_vectors(sigma, even_only=True)) == 2 ** (sigma - 1)
    F = B.field
    for e, K in fam.items():
        assert fq.is_characteristic(B, K)
        # phi(K_e) is K_e with the first slot flipped
        flipped = fam[fq.SignVector(e).flip(0).e]
        assert F.rank([fq.frobenius(F, x) for x in K] + flipped) == sigma
        for i in range(sigma):
            assert fq.intersection_dim(F, K, fam[fq.SignVector(e).flip(i).e]) == sigma - 1


def test_sign_vector():
    assert fq.SignVector((1, -1, -1)).parity == 1
    assert fq.SignVector((1, -1)).parity == -1
    with pytest.raises(ValueError):
        fq.SignVector((1, 0))


@pytest.mark.parametrize("p", [3, 5, 7])
def test_xi_eta(p):
    xi, eta = fq.solve_xi_eta(p)
    c = fq.smallest_irreducible_c(p)
    assert (4 - c * c + xi * xi + eta * eta) % p == 0
    if p in (3, 5):
        assert (xi, eta) == (1, 1)


def _brute_line_stabilizer(p):
    """Isometries of the 2-dim f_- space over F_p fixing the line of b_1^(+1)."""
    B = fq.build_standard_basis(p, 1)
    F = B.field
    G = np.array(B.gram, dtype=np.int64)
    v = B.b[(1, 1)]
    count = 0
    for entries in product(range(p), repeat=4):
        g = np.array(entries, dtype=np.int64).reshape(2, 2)
        if ((g.T @ G @ g - G) % p).any():
            continue
        gv = [F.add(F.mul(int(g[r][0]), v[0]), F.mul(int(g[r][1]), v[1])) for r in range(2)]
        if F.rank([gv, v]) == 1:
            count += 1
    return count


@pytest.mark.parametrize("p", [3, 5])
def test_sigma1_stabilizer_matches_brute_force(p):
    r = fq.family_stabilizer(p, 1)
    assert r.order == _brute_line_stabilizer(p) == p + 1
    assert r.order > 2


@pytest.mark.parametrize("p,sigma", [(3, 2), (3, 3), (5, 3), (7, 3), (3, 4)])
def test_E_plus_stabilizer_is_diagonal_torus(p, sigma):
    r = fq.family_stabilizer(p, sigma)
    n = 2 * sigma
    ident = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    minus = [[p - 1 if i == j else 0 for j in range(n)] for i in range(n)]
    assert ident in r.elements and minus in r.elements
    assert r.order == fq.torus_order(p, sigma)


@pytest.mark.parametrize("p,sigma", [(3, 3), (5, 3), (7, 3), (3, 4), (5, 4)])
def test_stabilizer_with_eigenlines_is_plus_minus_one(p, sigma):
    r = fq.genericity_stabilizer(p, sigma)
    assert r.is_plus_minus_identity()
