"""Integer lattices, exact LLL reduction and integer relation search."""

from __future__ import annotations

from fractions import Fraction
from math import gcd

import mpmath

from .poly import RationalPolynomial


class IntegerLattice:
    """Lattice spanned by the rows of an integer matrix."""

    __slots__ = ("basis",)

    def __init__(self, basis):
        rows = tuple(tuple(int(v) for v in r) for r in basis)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("basis vectors must have equal length")
        self.basis = rows

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def __getitem__(self, i):
        return self.basis[i]

    def __eq__(self, other):
        return isinstance(other, IntegerLattice) and self.basis == other.basis

    def __repr__(self):
        return f"IntegerLattice({[list(r) for r in self.basis]})"

    def gram(self) -> list[list[int]]:
        return [[_dot(a, b) for b in self.basis] for a in self.basis]

    def hermite_normal_form(self) -> list[tuple[int, ...]]:
        """Row-style HNF; two bases span the same lattice iff these agree."""
        rows = [list(r) for r in self.basis]
        if not rows:
            return []
        ncols = len(rows[0])
        out = []
        r0 = 0
        for c in range(ncols):
            # gcd-combine column c over rows r0..
            while True:
                nz = [i for i in range(r0, len(rows)) if rows[i][c]]
                if not nz:
                    break
                piv = min(nz, key=lambda i: abs(rows[i][c]))
                rows[r0], rows[piv] = rows[piv], rows[r0]
                done = True
                for i in range(r0 + 1, len(rows)):
                    if rows[i][c]:
                        q = rows[i][c] // rows[r0][c]
                        rows[i] = [a - q * b for a, b in zip(rows[i], rows[r0])]
                        if rows[i][c]:
                            done = False
                if done:
                    break
            if r0 < len(rows) and rows[r0][c]:
                if rows[r0][c] < 0:
                    rows[r0] = [-v for v in rows[r0]]
                for i in range(r0):
                    q = rows[i][c] // rows[r0][c]
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[r0])]
                r0 += 1
        out = [tuple(r) for r in rows[:r0]]
        return out


def _dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def lll_reduce(lattice: IntegerLattice, delta: Fraction = Fraction(3, 4)) -> IntegerLattice:
    """LLL reduction with exact integral Gram-Schmidt data.

    Uses the integer d_i / lambda_ij bookkeeping so no rational arithmetic
    appears in the inner loop.  Raises ValueError on a dependent basis.
    """
    b = [list(r) for r in lattice.basis]
    n = len(b)
    if n == 0:
        return IntegerLattice([])
    d = [0] * (n + 1)
    lam = [[0] * n for _ in range(n)]
    d[0] = 1
    # incremental Gram-Schmidt in integral form
    for k in range(n):
        for j in range(k + 1):
            u = _dot(b[k], b[j])
            for i in range(j):
                u = (d[i + 1] * u - lam[k][i] * lam[j][i]) // d[i]
            if j < k:
                lam[k][j] = u
            else:
                if u == 0:
                    raise ValueError("basis vectors are linearly dependent")
                d[k + 1] = u

    def red(k, l):
        if 2 * abs(lam[k][l]) > d[l + 1]:
            q = (2 * lam[k][l] + d[l + 1]) // (2 * d[l + 1])
            b[k] = [x - q * y for x, y in zip(b[k], b[l])]
            lam[k][l] -= q * d[l + 1]
            for i in range(l):
                lam[k][i] -= q * lam[l][i]

    def swap(k):
        b[k], b[k - 1] = b[k - 1], b[k]
        for j in range(k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        lm = lam[k][k - 1]
        B = (d[k - 1] * d[k + 1] + lm * lm) // d[k]
        for i in range(k + 1, n):
            t = lam[i][k]
            lam[i][k] = (d[k + 1] * lam[i][k - 1] - lm * t) // d[k]
            lam[i][k - 1] = (B * t + lm * lam[i][k]) // d[k + 1]
        d[k] = B

    num, den = delta.numerator, delta.denominator
    k = 1
    while k < n:
        red(k, k - 1)
        # Lovasz: d_{k+1} d_{k-1} >= delta d_k^2 - lam^2
        if den * (d[k + 1] * d[k - 1]) < num * d[k] * d[k] - den * lam[k][k - 1] ** 2:
            swap(k)
            k = max(1, k - 1)
        else:
            for l in range(k - 2, -1, -1):
                red(k, l)
            k += 1
    return IntegerLattice(b)


def is_lll_reduced(lattice: IntegerLattice, delta: Fraction = Fraction(3, 4)) -> bool:
    """Check size reduction and the Lovasz condition with exact Gram-Schmidt."""
    b = [list(map(Fraction, r)) for r in lattice.basis]
    n = len(b)
    bstar: list[list[Fraction]] = []
    norms: list[Fraction] = []
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        v = list(b[i])
        for j in range(i):
            mu[i][j] = _dot(b[i], bstar[j]) / norms[j]
            v = [x - mu[i][j] * y for x, y in zip(v, bstar[j])]
        bstar.append(v)
        norms.append(_dot(v, v))
    for i in range(n):
        for j in range(i):
            if abs(mu[i][j]) > Fraction(1, 2):
                return False
    for i in range(1, n):
        if norms[i] < (delta - mu[i][i - 1] ** 2) * norms[i - 1]:
            return False
    return True


class NoRelationFound(ArithmeticError):
    pass


def _short_relation(x, d: int, prec: int, C: int) -> RationalPolynomial | None:
    rows = []
    for i in range(d + 1):
        row = [0] * (d + 1)
        row[i] = 1
        row.append(int(mpmath.nint(C * x**i)))
        rows.append(row)
    for vec in lll_reduce(IntegerLattice(rows)):
        coeffs = list(vec[: d + 1])
        if not any(coeffs):
            continue
        g = 0
        for c in coeffs:
            g = gcd(g, c)
        coeffs = [c // g for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if len(coeffs) < 2:
            continue
        if coeffs[-1] < 0:
            coeffs = [-c for c in coeffs]
        val = abs(mpmath.polyval(coeffs[::-1], x))
        height = max(abs(c) for c in coeffs)
        if val >= mpmath.mpf(2) ** (-prec / 4) or val > height * mpmath.mpf(2) ** (-3 * prec / 4):
            continue
        return RationalPolynomial(coeffs)
    return None


# the second lattice is this many bits coarser
STABILITY_BITS = 32


def algdep(x, d: int, prec: int, strict: bool = True) -> RationalPolynomial:
    """Find an integer polynomial of degree <= d with a small value at x.

    The lattice has rows (e_i | round(C x^i)) for C = 2^(prec - 8), so x
    must be known to about prec bits.  The result is primitive with positive
    leading coefficient and satisfies |p(x)| < 2^(-prec/4) and
    |p(x)| <= H 2^(-3 prec/4), H the height.

    At this scale every reduced vector has a small value at x, so a
    residual test alone cannot tell a true relation from an accidental one.
    With ``strict`` the reduction is repeated at C / 2^32 and the answer is
    accepted only if both scales return the same polynomial: accidental
    relations move with C, true ones do not.
    """
    with mpmath.workprec(prec + 64):
        x = mpmath.mpf(x)
        C = 2 ** max(prec - 8, 8)
        p = _short_relation(x, d, prec, C)
        if p is not None and strict:
            q = _short_relation(x, d, prec, max(C >> STABILITY_BITS, 2))
            if q != p:
                p = None
        if p is not None:
            return p
    raise NoRelationFound("no relation found at this precision")
