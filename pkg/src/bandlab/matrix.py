"""Square matrices over a commutative ring (Fractions or Laurent polynomials)."""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import DimensionMismatch
from .exact import LaurentPoly, divide


def _zero_like(x):
    return LaurentPoly.zero() if isinstance(x, LaurentPoly) else Fraction(0)


def _norm(x):
    if isinstance(x, LaurentPoly):
        return x
    return Fraction(x)


def _is_zero(x) -> bool:
    return not x


class RingMatrix:
    """Immutable n x n matrix; entries are Fractions or LaurentPolys."""

    __slots__ = ("rows", "n")

    def __init__(self, rows: Iterable[Iterable]):
        self.rows = tuple(tuple(_norm(x) for x in row) for row in rows)
        self.n = len(self.rows)
        if any(len(r) != self.n for r in self.rows):
            raise DimensionMismatch("matrix is not square")

    @classmethod
    def identity(cls, n: int) -> "RingMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, entries: Sequence) -> "RingMatrix":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def entry(self, i: int, j: int):
        """1-based access."""
        return self.rows[i - 1][j - 1]

    def is_symbolic(self) -> bool:
        return any(isinstance(x, LaurentPoly) for row in self.rows for x in row)

    # algebra ------------------------------------------------------------
    def _check(self, other: "RingMatrix") -> None:
        if not isinstance(other, RingMatrix) or other.n != self.n:
            raise DimensionMismatch("size mismatch")

    def __matmul__(self, other: "RingMatrix") -> "RingMatrix":
        self._check(other)
        cols = list(zip(*other.rows))
        out = []
        for row in self.rows:
            new = []
            for col in cols:
                acc = None
                for a, b in zip(row, col):
                    if a and b:
                        t = a * b
                        acc = t if acc is None else acc + t
                new.append(acc if acc is not None else Fraction(0))
            out.append(new)
        return RingMatrix(out)

    __mul__ = __matmul__

    def __add__(self, other):
        self._check(other)
        return RingMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        self._check(other)
        return RingMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return RingMatrix([[-a for a in r] for r in self.rows])

    def scale(self, c) -> "RingMatrix":
        return RingMatrix([[a * c for a in r] for r in self.rows])

    def __pow__(self, k: int) -> "RingMatrix":
        if k < 0:
            return self.inverse() ** (-k)
        result = RingMatrix.identity(self.n)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def transpose(self) -> "RingMatrix":
        return RingMatrix(zip(*self.rows))

    def map(self, f: Callable) -> "RingMatrix":
        return RingMatrix([[f(x) for x in r] for r in self.rows])

    def eval(self, assignment) -> "RingMatrix":
        return self.map(lambda x: x.eval(assignment) if isinstance(x, LaurentPoly) else x)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RingMatrix):
            return NotImplemented
        return self.n == other.n and all(
            a == b for r, s in zip(self.rows, other.rows) for a, b in zip(r, s)
        )

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self) -> str:
        return "RingMatrix([" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows) + "])"

    # shape predicates -----------------------------------------------------
    def is_upper_unitriangular(self) -> bool:
        return all(
            (self.rows[i][j] == 1 if i == j else _is_zero(self.rows[i][j]))
            for i in range(self.n)
            for j in range(i + 1)
        )

    def is_lower_triangular(self) -> bool:
        return all(_is_zero(self.rows[i][j]) for i in range(self.n) for j in range(i + 1, self.n))

    def is_identity(self) -> bool:
        return self == RingMatrix.identity(self.n)

    # minors -------------------------------------------------------------
    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> list[list]:
        return [[self.rows[r][c] for c in cols] for r in rows]

    def minor(self, rows: Sequence[int], cols: Sequence[int]):
        """Determinant of the submatrix on 0-based ``rows`` x ``cols`` (in the given order)."""
        if len(rows) != len(cols):
            raise DimensionMismatch("minor needs as many rows as columns")
        return det_of(self.submatrix(rows, cols))

    def leading_minor(self, i: int):
        return self.minor(range(i), range(i))

    def trailing_minor(self, i: int):
        idx = range(self.n - i, self.n)
        return self.minor(idx, idx)

    def det(self):
        return det_of([list(r) for r in self.rows])

    def inverse(self) -> "RingMatrix":
        if self.is_symbolic():
            return self._adjugate_inverse()
        return self._gauss_jordan_inverse()

    def _gauss_jordan_inverse(self) -> "RingMatrix":
        n = self.n
        A = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self.rows)]
        for col in range(n):
            piv = next((r for r in range(col, n) if A[r][col]), None)
            if piv is None:
                raise ZeroDivisionError("singular matrix")
            A[col], A[piv] = A[piv], A[col]
            p = A[col][col]
            A[col] = [x / p for x in A[col]]
            for r in range(n):
                if r != col and A[r][col]:
                    f = A[r][col]
                    A[r] = [x - f * y for x, y in zip(A[r], A[col])]
        return RingMatrix([row[n:] for row in A])

    def _adjugate_inverse(self) -> "RingMatrix":
        n = self.n
        d = self.det()
        out = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                rows = [r for r in range(n) if r != j]
                cols = [c for c in range(n) if c != i]
                cof = self.minor(rows, cols) if n > 1 else Fraction(1)
                if (i + j) % 2:
                    cof = -cof
                out[i][j] = divide(cof, d)
        return RingMatrix(out)

    def to_json_obj(self):
        def enc(x):
            if isinstance(x, LaurentPoly):
                return x.to_json_obj()
            return f"{x.numerator}/{x.denominator}"

        return [[enc(x) for x in r] for r in self.rows]


def det_of(M: list[list]):
    """Division-free determinant by Laplace expansion memoized on column sets."""
    k = len(M)
    if k == 0:
        return Fraction(1)
    if k == 1:
        return M[0][0]
    if k == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    if all(type(x) is Fraction for row in M for x in row):
        return _fraction_det(M)
    # dp over subsets of columns used by the last rows
    prev = {(): None}
    prev = {(c,): M[k - 1][c] for c in range(k) if M[k - 1][c]}
    for row in range(k - 2, -1, -1):
        cur: dict = {}
        for cols, val in prev.items():
            free = [c for c in range(k) if c not in cols]
            for pos, c in enumerate(free):
                a = M[row][c]
                if not a:
                    continue
                # sign: number of used columns smaller than c
                inv = sum(1 for u in cols if u < c)
                term = a * val
                if inv % 2:
                    term = -term
                key = tuple(sorted(cols + (c,)))
                cur[key] = term if key not in cur else cur[key] + term
        prev = {key: v for key, v in cur.items() if v}
        if not prev:
            return Fraction(0)
    return prev.get(tuple(range(k)), Fraction(0))


def _fraction_det(M: list[list]) -> Fraction:
    A = [list(r) for r in M]
    n = len(A)
    sign = 1
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            sign = -sign
        p = A[col][col]
        det *= p
        for r in range(col + 1, n):
            if A[r][col]:
                f = A[r][col] / p
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return det * sign


def principal_minor_sum(g: RingMatrix, i: int):
    total = None
    for S in itertools.combinations(range(g.n), i):
        m = g.minor(S, S)
        total = m if total is None else total + m
    return total if total is not None else Fraction(0)
