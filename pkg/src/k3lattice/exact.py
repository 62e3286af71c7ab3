"""Exact integer and rational matrix algebra.

Matrices are plain lists of rows holding ``int`` or ``Fraction`` entries.
Nothing in here touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional, Sequence

Matrix = list  # list[list[int | Fraction]]


class DimensionError(ValueError):
    pass


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def normalize(x):
    """Return ``x`` as an ``int`` when it is integral, else as a ``Fraction``."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    out = [[normalize(to_fraction(v)) for v in row] for row in rows]
    if out and any(len(r) != len(out[0]) for r in out):
        raise DimensionError("ragged matrix")
    return out


def shape(M: Sequence[Sequence]) -> tuple[int, int]:
    return len(M), (len(M[0]) if M else 0)


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> Matrix:
    return [[0] * n for _ in range(m)]


def transpose(M: Sequence[Sequence]) -> Matrix:
    return [list(c) for c in zip(*M)] if M else []


def mat_mul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    if A and B and len(A[0]) != len(B):
        raise DimensionError(f"cannot multiply {shape(A)} by {shape(B)}")
    Bt = transpose(B)
    return [[normalize(sum(a * b for a, b in zip(row, col))) for col in Bt] for row in A]


def vec_mat(v: Sequence, M: Sequence[Sequence]) -> list:
    if len(v) != len(M):
        raise DimensionError("vector/matrix size mismatch")
    n = len(M[0]) if M else 0
    out = [0] * n
    for a, row in zip(v, M):
        if a:
            for j, b in enumerate(row):
                if b:
                    out[j] += a * b
    return [normalize(x) for x in out]


def mat_vec(M: Sequence[Sequence], v: Sequence) -> list:
    return [normalize(sum(a * b for a, b in zip(row, v))) for row in M]


def dot(u: Sequence, v: Sequence):
    return normalize(sum(a * b for a, b in zip(u, v)))


def bilinear(u: Sequence, G: Sequence[Sequence], v: Sequence):
    return dot(vec_mat(u, G), v)


def scale(M: Sequence[Sequence], c) -> Matrix:
    return [[normalize(c * x) for x in row] for row in M]


def is_integral(M: Sequence[Sequence]) -> bool:
    return all(isinstance(x, int) or to_fraction(x).denominator == 1 for row in M for x in row)


def common_denominator(M: Sequence[Sequence]) -> int:
    d = 1
    for row in M:
        for x in row:
            if not isinstance(x, int):
                d = lcm(d, to_fraction(x).denominator)
    return d


def block_diagonal(*blocks: Sequence[Sequence]) -> Matrix:
    n = sum(len(b) for b in blocks)
    out = zeros(n, n)
    k = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[k + i][k + j] = x
        k += len(b)
    return out


# ---------------------------------------------------------------- determinants

def _bareiss(A: list[list[int]]) -> int:
    n = len(A)
    A = [row[:] for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return sign * A[n - 1][n - 1] if n else 1


def det_exact(M: Sequence[Sequence]):
    """Exact determinant by fraction-free (Bareiss) elimination.

    Rational input is scaled to an integer matrix first, so every
    intermediate quantity is an integer.
    """
    m, n = shape(M)
    if m != n:
        raise DimensionError(f"determinant of non-square {m}x{n} matrix")
    if n == 0:
        return 1
    d = common_denominator(M)
    A = [[int(to_fraction(x) * d) for x in row] for row in M]
    return normalize(Fraction(_bareiss(A), d ** n))


def cofactor_det(M: Sequence[Sequence]):
    """Laplace expansion along the first row; exponential, only for oracles."""
    n = len(M)
    if n == 0:
        return 1
    if n == 1:
        return M[0][0]
    total = 0
    for j in range(n):
        if M[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        total += (-1) ** j * M[0][j] * cofactor_det(minor)
    return normalize(to_fraction(total))


# ---------------------------------------------------------- rational elimination

def rref(M: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over Q and the pivot columns."""
    A = [[to_fraction(x) for x in row] for row in M]
    m, n = shape(A)
    pivots: list[int] = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(m):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return [[normalize(x) for x in row] for row in A], pivots


def rank(M: Sequence[Sequence]) -> int:
    return len(rref(M)[1]) if M else 0


def _fraction_free_inverse(A: list[list[int]]) -> Matrix:
    """Inverse of an integer matrix by fraction-free Gauss-Jordan.

    Every division in the update is exact; at the end the left block is
    d*I and the right block d*A^{-1} for d = +-det A.
    """
    n = len(A)
    W = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(A)]
    prev = 1
    for k in range(n):
        p = next((i for i in range(k, n) if W[i][k] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        if p != k:
            W[k], W[p] = W[p], W[k]
        pk = W[k]
        akk = pk[k]
        for i in range(n):
            if i == k:
                continue
            row = W[i]
            aik = row[k]
            W[i] = [(akk * a - aik * b) // prev for a, b in zip(row, pk)]
        prev = akk
    d = W[0][0]
    return [[normalize(Fraction(x, d)) for x in W[i][n:]] for i in range(n)]


def inverse(M: Sequence[Sequence]) -> Matrix:
    m, n = shape(M)
    if m != n:
        raise DimensionError("inverse of non-square matrix")
    den = common_denominator(M)
    A = [[int(to_fraction(x) * den) for x in row] for row in M]
    inv = _fraction_free_inverse(A)
    return inv if den == 1 else [[normalize(x * den) for x in row] for row in inv]


def rational_kernel(M: Sequence[Sequence]) -> Matrix:
    """Basis (as rows) of {x : M x = 0} over Q."""
    m, n = shape(M)
    R, piv = rref(M) if m else ([], [])
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        x = [0] * n
        x[f] = 1
        for i, c in enumerate(piv):
            x[c] = normalize(-to_fraction(R[i][f]))
        basis.append(x)
    return basis


# -------------------------------------------------------------- normal forms

def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hermite_normal_form(M: Sequence[Sequence]) -> tuple[Matrix, Matrix]:
    """Row-style Hermite normal form of an integer matrix.

    Returns ``(H, U)`` with ``U`` unimodular and ``U M = H``.  The nonzero
    rows of ``H`` come first, have positive pivots, and entries above each
    pivot are reduced into ``[0, pivot)``.
    """
    A = [[int(x) for x in row] for row in M]
    m, n = shape(A)
    U = identity(m)
    r = 0
    for c in range(n):
        if r == m:
            break
        for i in range(r + 1, m):
            if A[i][c] == 0:
                continue
            if A[r][c] == 0:
                A[r], A[i] = A[i], A[r]
                U[r], U[i] = U[i], U[r]
                continue
            a, b = A[r][c], A[i][c]
            g, x, y = _xgcd(a, b)
            ag, bg = a // g, b // g
            Ar, Ai = A[r], A[i]
            A[r] = [x * p + y * q for p, q in zip(Ar, Ai)]
            A[i] = [-bg * p + ag * q for p, q in zip(Ar, Ai)]
            Ur, Ui = U[r], U[i]
            U[r] = [x * p + y * q for p, q in zip(Ur, Ui)]
            U[i] = [-bg * p + ag * q for p, q in zip(Ur, Ui)]
        if A[r][c] == 0:
            continue
        if A[r][c] < 0:
            A[r] = [-x for x in A[r]]
            U[r] = [-x for x in U[r]]
        piv = A[r][c]
        for i in range(r):
            q = A[i][c] // piv
            if q:
                A[i] = [p - q * s for p, s in zip(A[i], A[r])]
                U[i] = [p - q * s for p, s in zip(U[i], U[r])]
        r += 1
    return A, U


def row_lattice_basis(rows: Sequence[Sequence]) -> Matrix:
    """HNF basis of the Z-span of (possibly rational) row vectors."""
    if not rows:
        return []
    d = common_denominator(rows)
    H, _ = hermite_normal_form([[int(to_fraction(x) * d) for x in row] for row in rows])
    return [[normalize(Fraction(x, d)) for x in row] for row in H if any(row)]


@dataclass(frozen=True)
class SmithForm:
    D: Matrix
    U: Matrix
    V: Matrix

    @property
    def diagonal(self) -> list[int]:
        m, n = shape(self.D)
        return [self.D[i][i] for i in range(min(m, n))]

    @property
    def invariant_factors(self) -> list[int]:
        return [d for d in self.diagonal if d != 0]


def smith_normal_form(M: Sequence[Sequence]) -> SmithForm:
    """Smith normal form ``D = U M V`` with ``U``, ``V`` unimodular.

    ``D`` is diagonal with nonnegative entries ``d1 | d2 | ...``.
    """
    A = [[int(x) for x in row] for row in M]
    m, n = shape(A)
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero absolute value in the trailing block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < best[0]):
                    best = (abs(A[i][j]), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[t])]
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    for row in A:
                        row[j] -= q * row[t]
                    for row in V:
                        row[j] -= q * row[t]
                    if A[t][j]:
                        done = False
            if not done:
                # bring the smallest remainder in row/column t to the pivot
                cand = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
                cand += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
                _, i, j = min(cand)
                if i != t:
                    swap_rows(t, i)
                if j != t:
                    swap_cols(t, j)
                continue
            # divisibility: pivot must divide the whole trailing block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % p), None)
            if bad is None:
                break
            i, _ = bad
            A[t] = [a + b for a, b in zip(A[t], A[i])]
            U[t] = [a + b for a, b in zip(U[t], U[i])]
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    return SmithForm(A, U, V)


def unimodular_completion(v: Sequence[int]) -> Matrix:
    """Unimodular matrix whose first row is the primitive integer vector ``v``."""
    snf = smith_normal_form([list(v)])
    if snf.D[0][0] != 1:
        raise ValueError("vector is not primitive")
    # U v V = e1 with U = [+-1]  =>  v = U * e1 * V^-1
    W = inverse(snf.V)
    W = [[int(x) for x in row] for row in W]
    if snf.U[0][0] == -1:
        W[0] = [-x for x in W[0]]
    return W


def integer_left_kernel(M: Sequence[Sequence]) -> Matrix:
    """Basis (rows) of {x in Z^m : x M = 0}; the result is saturated."""
    m, n = shape(M)
    if m == 0:
        return []
    d = common_denominator(M)
    A = [[int(to_fraction(x) * d) for x in row] for row in M]
    H, U = hermite_normal_form(A)
    return [U[i] for i in range(m) if not any(H[i])]


def saturation_basis(rows: Sequence[Sequence[int]]) -> Matrix:
    """Basis of (Q-span of rows) intersected with Z^n."""
    if not rows:
        return []
    snf = smith_normal_form(rows)
    r = len(snf.invariant_factors)
    W = inverse(snf.V)
    return [[int(x) for x in W[i]] for i in range(r)]


@dataclass(frozen=True)
class SolveResult:
    rational_solution: Optional[list]
    rational_kernel: Matrix
    integer_solution: Optional[list]
    integer_kernel: Matrix

    @property
    def solvable_over_Q(self) -> bool:
        return self.rational_solution is not None

    @property
    def solvable_over_Z(self) -> bool:
        return self.integer_solution is not None


def kernel_and_solve(M: Sequence[Sequence], b: Sequence) -> SolveResult:
    """Solve ``M x = b`` separately over Q and over Z.

    ``M`` must be an integer matrix; ``b`` may be rational.
    """
    m, n = shape(M)
    if len(b) != m:
        raise DimensionError(f"right-hand side has length {len(b)}, expected {m}")
    if not is_integral(M):
        raise ValueError("kernel_and_solve expects an integer matrix")
    aug = [list(row) + [b[i]] for i, row in enumerate(M)]
    R, piv = rref(aug)
    if n in piv:
        q_sol = None
    else:
        q_sol = [0] * n
        for i, c in enumerate(piv):
            q_sol[c] = R[i][n]
    q_ker = rational_kernel(M)

    snf = smith_normal_form(M)
    diag = snf.diagonal
    r = len(snf.invariant_factors)
    ub = mat_vec(snf.U, b)
    z_sol = None
    if all(isinstance(x, int) for x in ub) and all(ub[i] == 0 for i in range(r, m)) \
            and all(ub[i] % diag[i] == 0 for i in range(r)):
        y = [ub[i] // diag[i] if i < r else 0 for i in range(n)]
        z_sol = mat_vec(snf.V, y)
    z_ker = [[snf.V[i][j] for i in range(n)] for j in range(r, n)]
    return SolveResult(q_sol, q_ker, z_sol, z_ker)


def solve_left(A: Sequence[Sequence], v: Sequence) -> list:
    """Rational x with x A = v, for ``A`` of full row rank."""
    res = kernel_and_solve_rational(transpose(A), v)
    if res is None:
        raise ValueError("vector not in the row space")
    return res


def kernel_and_solve_rational(M: Sequence[Sequence], b: Sequence) -> Optional[list]:
    m, n = shape(M)
    aug = [list(row) + [b[i]] for i, row in enumerate(M)]
    R, piv = rref(aug)
    if n in piv:
        return None
    x = [0] * n
    for i, c in enumerate(piv):
        x[c] = R[i][n]
    return x


# ------------------------------------------------------------------- LLL

def lll_gram(G: Sequence[Sequence[int]], delta: Fraction = Fraction(3, 4)) -> tuple[Matrix, Matrix]:
    """LLL reduction of a positive definite integral Gram matrix.

    Integral variant (all quantities kept as integers).  Returns
    ``(G', H)`` with ``H`` unimodular and ``G' = H G H^T``.
    """
    n = len(G)
    if n == 0:
        return [], []
    if not is_integral(G):
        raise ValueError("lll_gram expects an integral Gram matrix")
    b = [[int(x) for x in row] for row in G]  # current Gram, kept in sync with H
    H = identity(n)
    d = [0] * (n + 1)
    lam = [[0] * n for _ in range(n)]
    num, den = delta.numerator, delta.denominator

    def ip(i, j):
        return b[i][j]

    def apply_sub(k, l, q):
        # b_k <- b_k - q b_l
        H[k] = [x - q * y for x, y in zip(H[k], H[l])]
        row_k = b[k]
        row_l = b[l]
        new = [x - q * y for x, y in zip(row_k, row_l)]
        new[k] = row_k[k] - 2 * q * row_k[l] + q * q * row_l[l]
        b[k] = new
        for i in range(n):
            if i != k:
                b[i][k] = new[i]

    def swap(i, j):
        H[i], H[j] = H[j], H[i]
        b[i], b[j] = b[j], b[i]
        for row in b:
            row[i], row[j] = row[j], row[i]

    # d[0] = 1, d[i+1] = product of squared GS norms; indices shifted by one
    d[0] = 1
    d[1] = ip(0, 0)
    if d[1] <= 0:
        raise ValueError("Gram matrix not positive definite")
    k = 1
    kmax = 0

    def redi(k, l):
        if 2 * abs(lam[k][l]) > d[l + 1]:
            q = (2 * lam[k][l] + d[l + 1]) // (2 * d[l + 1])
            apply_sub(k, l, q)
            lam[k][l] -= q * d[l + 1]
            for i in range(l):
                lam[k][i] -= q * lam[l][i]

    def swapi(k):
        swap(k, k - 1)
        for j in range(k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        lm = lam[k][k - 1]
        B = (d[k - 1] * d[k + 1] + lm * lm) // d[k]
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (d[k + 1] * lam[i][k - 1] - lm * t) // d[k]
            lam[i][k - 1] = (B * t + lm * lam[i][k]) // d[k + 1]
        d[k] = B

    while k < n:
        if k > kmax:
            kmax = k
            for j in range(k + 1):
                u = ip(k, j)
                for i in range(j):
                    u = (d[i + 1] * u - lam[k][i] * lam[j][i]) // d[i]
                if j < k:
                    lam[k][j] = u
                else:
                    if u <= 0:
                        raise ValueError("Gram matrix not positive definite")
                    d[k + 1] = u
        redi(k, k - 1)
        if den * d[k + 1] * d[k - 1] < num * d[k] * d[k] - den * lam[k][k - 1] ** 2:
            swapi(k)
            k = max(1, k - 1)
        else:
            for l in range(k - 2, -1, -1):
                redi(k, l)
            k += 1
    return [row[:] for row in b], H
