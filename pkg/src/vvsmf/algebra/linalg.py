"""Exact dense linear algebra.

The elimination routines are written against the field operators only, so
they run unchanged over ``Fraction`` and over number field elements.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Callable, Sequence

from .poly import RationalPolynomial


def _is_zero(x) -> bool:
    return x == 0


def rref(rows: Sequence[Sequence[Any]], one: Any = Fraction(1)):
    """Reduced row echelon form.  Returns (matrix, pivot column list)."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if not _is_zero(m[i][c])), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = one / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and not _is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def nullspace(rows: Sequence[Sequence[Any]], one: Any = Fraction(1), zero: Any = Fraction(0)):
    """Basis of {v : rows . v = 0} (right kernel)."""
    if not rows:
        return []
    ncols = len(rows[0])
    m, pivots = rref(rows, one)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][f]
        basis.append(v)
    return basis


class RationalMatrix:
    """Dense matrix over Q."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Sequence[Sequence]):
        self.rows = tuple(tuple(Fraction(v) for v in r) for r in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged matrix")

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, n: int, m: int | None = None) -> "RationalMatrix":
        return cls([[0] * (n if m is None else m) for _ in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, RationalMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = "; ".join(" ".join(str(v) for v in r) for r in self.rows)
        return f"RationalMatrix([{body}])"

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(list(zip(*self.rows)) if self.rows else [])

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        return RationalMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        return RationalMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __mul__(self, other):
        if isinstance(other, RationalMatrix):
            if self.ncols != other.nrows:
                raise ValueError("dimension mismatch")
            cols = list(zip(*other.rows))
            return RationalMatrix([[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols] for r in self.rows])
        c = Fraction(other)
        return RationalMatrix([[c * v for v in r] for r in self.rows])

    __rmul__ = __mul__

    def apply(self, v: Sequence) -> list:
        return [sum((a * b for a, b in zip(r, v)), Fraction(0)) for r in self.rows]

    def trace(self) -> Fraction:
        return sum((self.rows[i][i] for i in range(self.nrows)), Fraction(0))

    def rank(self) -> int:
        return len(rref(self.rows)[1])

    def det(self) -> Fraction:
        if not self.is_square:
            raise ValueError("determinant of a non-square matrix")
        m = [list(r) for r in self.rows]
        n = self.nrows
        d = Fraction(1)
        for c in range(n):
            piv = next((i for i in range(c, n) if m[i][c] != 0), None)
            if piv is None:
                return Fraction(0)
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                d = -d
            d *= m[c][c]
            for i in range(c + 1, n):
                if m[i][c]:
                    f = m[i][c] / m[c][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[c])]
        return d

    def inverse(self) -> "RationalMatrix":
        if not self.is_square:
            raise ValueError("inverse of a non-square matrix")
        n = self.nrows
        aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self.rows)]
        m, piv = rref(aug)
        if piv[:n] != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return RationalMatrix([r[n:] for r in m])

    def solve_left(self, b: "RationalMatrix") -> "RationalMatrix":
        """X with X * self = b."""
        return b * self.inverse()

    def nullspace(self) -> list[list[Fraction]]:
        return nullspace(self.rows)

    def left_nullspace(self) -> list[list[Fraction]]:
        return nullspace(self.transpose().rows)

    def map_entries(self, fn: Callable) -> list[list]:
        return [[fn(v) for v in r] for r in self.rows]


def charpoly(m: RationalMatrix) -> RationalPolynomial:
    """Monic characteristic polynomial det(xI - m) (Faddeev-LeVerrier)."""
    if not m.is_square:
        raise ValueError("characteristic polynomial needs a square matrix")
    n = m.nrows
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    M = RationalMatrix.zero(n)
    ident = RationalMatrix.identity(n)
    for k in range(1, n + 1):
        M = m * M + ident * coeffs[n - k + 1]
        coeffs[n - k] = -(m * M).trace() / k
    return RationalPolynomial(coeffs)
