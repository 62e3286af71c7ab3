"""Small finite fields F_p and F_{p^2} with log/antilog tables.

F_{p^2} is F_p[t]/(t^2 + c t + 1); an element a + b t is encoded as the
integer a + b p.  Tables make multiplication a lookup, which is what the
incidence enumerations need.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Optional, Sequence


def smallest_irreducible_c(p: int) -> int:
    """Least c >= 0 with t^2 + c t + 1 irreducible over F_p."""
    for c in range(p):
        if all((x * x + c * x + 1) % p for x in range(p)):
            return c
    raise ValueError(f"no irreducible t^2 + ct + 1 over F_{p}")


class GF:
    def __init__(self, p: int, degree: int = 1, c: Optional[int] = None):
        if degree not in (1, 2):
            raise ValueError("only degrees 1 and 2 are supported")
        self.p = p
        self.degree = degree
        self.q = p ** degree
        if degree == 2:
            self.c = smallest_irreducible_c(p) if c is None else c
            if any((x * x + self.c * x + 1) % p == 0 for x in range(p)):
                raise ValueError(f"t^2 + {self.c}t + 1 is reducible over F_{p}")
        else:
            self.c = None
        self._build_tables()

    def __repr__(self):
        return f"GF({self.q})"

    # raw polynomial multiplication used only while building tables
    def _mul_raw(self, x: int, y: int) -> int:
        p = self.p
        if self.degree == 1:
            return x * y % p
        a0, a1 = x % p, x // p
        b0, b1 = y % p, y // p
        # (a0 + a1 t)(b0 + b1 t), t^2 = -c t - 1
        c0 = a0 * b0 - a1 * b1
        c1 = a0 * b1 + a1 * b0 - self.c * a1 * b1
        return c0 % p + (c1 % p) * p

    def _build_tables(self):
        q = self.q
        for g in range(2, q) if q > 2 else [1]:
            seen = set()
            x = 1
            for _ in range(q - 1):
                seen.add(x)
                x = self._mul_raw(x, g)
            if len(seen) == q - 1:
                break
        else:
            raise RuntimeError("no primitive element found")
        self.generator = g
        self.exp = [0] * (2 * (q - 1))
        self.log = [0] * q
        x = 1
        for i in range(q - 1):
            self.exp[i] = x
            self.exp[i + q - 1] = x
            self.log[x] = i
            x = self._mul_raw(x, g)
        p = self.p
        if self.degree == 1:
            self._add = [[(a + b) % p for b in range(q)] for a in range(q)]
        else:
            self._add = [[(a % p + b % p) % p + ((a // p + b // p) % p) * p for b in range(q)]
                         for a in range(q)]
        self._neg = [self._add_inverse(a) for a in range(q)]

    def _add_inverse(self, a: int) -> int:
        p = self.p
        if self.degree == 1:
            return (-a) % p
        return (-(a % p)) % p + ((-(a // p)) % p) * p

    @property
    def elements(self) -> range:
        return range(self.q)

    @cached_property
    def alpha(self) -> int:
        """Class of t (degree 2 only)."""
        if self.degree != 2:
            raise ValueError("alpha exists only in F_{p^2}")
        return self.p

    def element(self, a: int, b: int = 0) -> int:
        return a % self.p + (b % self.p) * self.p if self.degree == 2 else a % self.p

    def coords(self, x: int) -> tuple[int, int]:
        return (x % self.p, x // self.p) if self.degree == 2 else (x, 0)

    def from_int(self, n: int) -> int:
        return n % self.p

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self._neg[b]]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return self.exp[(self.q - 1 - self.log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            return 0 if n > 0 else 1
        return self.exp[(self.log[a] * n) % (self.q - 1)]

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def is_square(self, a: int) -> bool:
        return a == 0 or self.log[a] % 2 == 0

    def sqrt(self, a: int) -> Optional[int]:
        if a == 0:
            return 0
        if self.log[a] % 2:
            return None
        return self.exp[self.log[a] // 2]

    def in_prime_field(self, a: int) -> bool:
        return a < self.p

    # -------------------------------------------------------- vectors / matrices

    def dot(self, u: Sequence[int], v: Sequence[int]) -> int:
        s = 0
        for a, b in zip(u, v):
            if a and b:
                s = self._add[s][self.exp[self.log[a] + self.log[b]]]
        return s

    def scale_vec(self, a: int, v: Sequence[int]) -> list[int]:
        return [self.mul(a, x) for x in v]

    def add_vec(self, u: Sequence[int], v: Sequence[int]) -> list[int]:
        return [self._add[a][b] for a, b in zip(u, v)]

    def normalize_projective(self, v: Sequence[int]) -> tuple:
        """Scale so that the first nonzero entry is 1."""
        for x in v:
            if x:
                s = self.inv(x)
                return tuple(self.mul(s, y) for y in v)
        raise ValueError("zero vector has no projective class")

    def rref(self, rows: Iterable[Sequence[int]]) -> tuple[list[list[int]], list[int]]:
        A = [list(r) for r in rows]
        if not A:
            return [], []
        m, n = len(A), len(A[0])
        piv = []
        r = 0
        for col in range(n):
            k = next((i for i in range(r, m) if A[i][col]), None)
            if k is None:
                continue
            A[r], A[k] = A[k], A[r]
            s = self.inv(A[r][col])
            A[r] = [self.mul(s, x) for x in A[r]]
            for i in range(m):
                if i != r and A[i][col]:
                    f = self.neg(A[i][col])
                    A[i] = [self._add[x][self.mul(f, y)] for x, y in zip(A[i], A[r])]
            piv.append(col)
            r += 1
            if r == m:
                break
        return A[:r], piv

    def rank(self, rows: Iterable[Sequence[int]]) -> int:
        return len(self.rref(rows)[1])

    def nullspace(self, rows: Sequence[Sequence[int]], n: Optional[int] = None) -> list[list[int]]:
        """Basis of {x : rows . x = 0}."""
        if not rows:
            return [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        n = len(rows[0])
        R, piv = self.rref(rows)
        out = []
        for f in [c for c in range(n) if c not in piv]:
            x = [0] * n
            x[f] = 1
            for i, c in enumerate(piv):
                x[c] = self.neg(R[i][f])
            out.append(x)
        return out

    def det(self, M: Sequence[Sequence[int]]) -> int:
        A = [list(r) for r in M]
        n = len(A)
        d = 1
        for col in range(n):
            k = next((i for i in range(col, n) if A[i][col]), None)
            if k is None:
                return 0
            if k != col:
                A[col], A[k] = A[k], A[col]
                d = self.neg(d)
            d = self.mul(d, A[col][col])
            s = self.inv(A[col][col])
            for i in range(col + 1, n):
                if A[i][col]:
                    f = self.neg(self.mul(A[i][col], s))
                    A[i] = [self._add[x][self.mul(f, y)] for x, y in zip(A[i], A[col])]
        return d


def projective_points(F: GF, dim: int) -> list[tuple]:
    """Normalized representatives of P^dim(F), in lexicographic order."""
    from itertools import product

    pts = []
    for v in product(F.elements, repeat=dim + 1):
        if any(v) and F.normalize_projective(v) == v:
            pts.append(v)
    return pts
