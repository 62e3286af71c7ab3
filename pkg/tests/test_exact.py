from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from k3lattice import exact as ex


def int_matrices(min_rows=1, max_rows=4, min_cols=1, max_cols=4, lo=-6, hi=6):
    return st.integers(min_rows, max_rows).flatmap(
        lambda m: st.integers(min_cols, max_cols).flatmap(
            lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n),
                               min_size=m, max_size=m)))


def square(max_n=5, lo=-7, hi=7):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n))


@settings(max_examples=150, deadline=None)
@given(square())
def test_det_matches_cofactor_and_sympy(M):
    d = ex.det_exact(M)
    assert d == ex.cofactor_det(M)
    assert d == sympy.Matrix(M).det()


@settings(max_examples=60, deadline=None)
@given(square(max_n=4), st.integers(1, 5))
def test_det_rational(M, den):
    R = [[Fraction(x, den) for x in row] for row in M]
    assert ex.det_exact(R) == Fraction(ex.det_exact(M), den ** len(M))


@settings(max_examples=120, deadline=None)
@given(int_matrices())
def test_smith_form_certificate(M):
    snf = ex.smith_normal_form(M)
    assert ex.mat_mul(ex.mat_mul(snf.U, M), snf.V) == snf.D
    assert abs(ex.det_exact(snf.U)) == 1 and abs(ex.det_exact(snf.V)) == 1
    diag = snf.diagonal
    m, n = ex.shape(M)
    for i in range(m):
        for j in range(n):
            if i != j:
                assert snf.D[i][j] == 0
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    # zeros trail
    assert diag == nz + [0] * (len(diag) - len(nz))


@settings(max_examples=80, deadline=None)
@given(int_matrices(max_rows=4, max_cols=4))
def test_smith_invariants_match_sympy(M):
    ours = ex.smith_normal_form(M).invariant_factors
    S = sympy_snf(sympy.Matrix(M), domain=sympy.ZZ)
    theirs = [abs(int(S[i, i])) for i in range(min(S.shape)) if S[i, i] != 0]
    assert sorted(ours) == sorted(theirs)


@settings(max_examples=100, deadline=None)
@given(int_matrices())
def test_hermite_form(M):
    H, U = ex.hermite_normal_form(M)
    assert ex.mat_mul(U, M) == H
    assert abs(ex.det_exact(U)) == 1
    assert ex.rank(H) == ex.rank(M)
    last = -1
    for row in H:
        if not any(row):
            continue
        lead = next(j for j, x in enumerate(row) if x)
        assert lead > last and row[lead] > 0
        last = lead


@settings(max_examples=100, deadline=None)
@given(square(max_n=5))
def test_inverse(M):
    if ex.det_exact(M) == 0:
        with pytest.raises(Exception):
            ex.inverse(M)
        return
    Minv = ex.inverse(M)
    assert ex.mat_mul(M, Minv) == ex.identity(len(M))


@settings(max_examples=100, deadline=None)
@given(int_matrices(max_rows=5, max_cols=3))
def test_integer_left_kernel(M):
    K = ex.integer_left_kernel(M)
    m = len(M)
    assert len(K) == m - ex.rank(M)
    for x in K:
        assert ex.vec_mat(x, M) == [0] * len(M[0])
    if K:
        assert all(d == 1 for d in ex.smith_normal_form(K).invariant_factors)


@settings(max_examples=100, deadline=None)
@given(int_matrices(max_rows=3, max_cols=4), st.lists(st.integers(-5, 5), min_size=4, max_size=4))
def test_kernel_and_solve(M, coeffs):
    # b = M x for an integer x, so an integer solution must be found
    x = coeffs[:len(M[0])]
    b = ex.mat_vec(M, x)
    res = ex.kernel_and_solve(M, b)
    assert res.integer_solution is not None
    assert ex.mat_vec(M, res.integer_solution) == b
    assert ex.mat_vec(M, res.rational_solution) == b
    for k in res.integer_kernel:
        assert ex.mat_vec(M, k) == [0] * len(M)


def test_kernel_and_solve_detects_non_integral():
    res = ex.kernel_and_solve([[2, 4]], [1])
    assert res.integer_solution is None
    assert res.rational_solution is not None


def test_unimodular_completion():
    W = ex.unimodular_completion([6, 10, 15])
    assert W[0] == [6, 10, 15]
    assert abs(ex.det_exact(W)) == 1


@settings(max_examples=60, deadline=None)
@given(square(max_n=4, lo=-4, hi=4))
def test_lll_gram_invariants(A):
    if ex.det_exact(A) == 0:
        return
    G = ex.mat_mul(A, ex.transpose(A))   # positive definite
    R, H = ex.lll_gram(G)
    assert abs(ex.det_exact(H)) == 1
    assert ex.mat_mul(ex.mat_mul(H, G), ex.transpose(H)) == R
    # Gram-Schmidt from the reduced Gram: size reduction and Lovasz condition
    n = len(R)
    mu = [[Fraction(0)] * n for _ in range(n)]
    B = [Fraction(0)] * n
    for i in range(n):
        for j in range(i):
            mu[i][j] = (R[i][j] - sum(mu[j][k] * mu[i][k] * B[k] for k in range(j))) / B[j]
        B[i] = R[i][i] - sum(mu[i][k] ** 2 * B[k] for k in range(i))
    for i in range(n):
        for j in range(i):
            assert abs(mu[i][j]) <= Fraction(1, 2)
    for k in range(1, n):
        assert B[k] >= (Fraction(3, 4) - mu[k][k - 1] ** 2) * B[k - 1]


def test_block_diagonal_and_bilinear():
    B = ex.block_diagonal([[2]], [[0, 1], [1, 0]])
    assert B == [[2, 0, 0], [0, 0, 1], [0, 1, 0]]
    assert ex.bilinear([1, 1, 1], B, [1, 1, 1]) == 4


def test_dimension_errors():
    with pytest.raises(ex.DimensionError):
        ex.mat_mul([[1, 2]], [[1, 2]])
