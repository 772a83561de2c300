"""Jacobi forms of index one on the full Jacobi group.

For index one the coefficient c(n, r) depends only on N = 4n - r^2 (the
parity of r is determined by N mod 4), so a form is stored as the list of
values c_N for 0 <= N <= 4 n_max.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt, lcm
from typing import Sequence

from .algebra.arith import cohen_H
from .algebra.series import mul_int
from .eform import QSeries, eisenstein_qexp


class JacobiFormIndex1:
    """Index-one Jacobi form of weight k with coefficients up to n = n_max."""

    __slots__ = ("weight", "n_max", "values")

    def __init__(self, weight: int, n_max: int, values: Sequence):
        if len(values) != 4 * n_max + 1:
            raise ValueError("need one value per discriminant 0..4 n_max")
        self.weight = weight
        self.n_max = n_max
        self.values = tuple(Fraction(v) for v in values)

    def __repr__(self):
        return f"JacobiFormIndex1(weight={self.weight}, n_max={self.n_max})"

    def __eq__(self, other):
        return isinstance(other, JacobiFormIndex1) and (self.weight, self.values) == (other.weight, other.values)

    def __hash__(self):
        return hash((self.weight, self.values))

    def c(self, n: int, r: int) -> Fraction:
        N = 4 * n - r * r
        if N < 0:
            return Fraction(0)
        if n > self.n_max:
            raise IndexError(f"c({n}, {r}) beyond truncation n_max={self.n_max}")
        return self.values[N]

    def by_disc(self, N: int) -> Fraction:
        """The common value of c(n, r) over 4n - r^2 = N."""
        if N < 0:
            return Fraction(0)
        if N >= len(self.values):
            raise IndexError(f"discriminant {N} beyond truncation")
        return self.values[N]

    def table(self) -> dict[tuple[int, int], Fraction]:
        """Explicit (n, r) -> c(n, r) for r >= 0 and 4n - r^2 >= 0."""
        out = {}
        for n in range(self.n_max + 1):
            for r in range(isqrt(4 * n) + 1):
                out[(n, r)] = self.values[4 * n - r * r]
        return out

    def scale(self, c) -> "JacobiFormIndex1":
        c = Fraction(c)
        return JacobiFormIndex1(self.weight, self.n_max, [c * v for v in self.values])

    def __add__(self, other: "JacobiFormIndex1") -> "JacobiFormIndex1":
        if self.weight != other.weight or self.n_max != other.n_max:
            raise ValueError("incompatible Jacobi forms")
        return JacobiFormIndex1(self.weight, self.n_max, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other: "JacobiFormIndex1") -> "JacobiFormIndex1":
        return self + other.scale(-1)

    def is_cusp(self) -> bool:
        return self.values[0] == 0


def jacobi_eisenstein(k: int, n_max: int) -> JacobiFormIndex1:
    """E_{k,1} with c(n, r) = H(k-1, 4n - r^2) / H(k-1, 0)."""
    if k not in (4, 6):
        raise ValueError("Jacobi Eisenstein series implemented for k = 4, 6")
    h0 = cohen_H(k - 1, 0)
    values = []
    for N in range(4 * n_max + 1):
        values.append(cohen_H(k - 1, N) / h0 if N % 4 in (0, 3) else Fraction(0))
    return JacobiFormIndex1(k, n_max, values)


def scale_by_elliptic(f: QSeries, phi: JacobiFormIndex1) -> JacobiFormIndex1:
    """(f phi)(n, r) = sum_m a_f(m) c_phi(n - m, r)."""
    n = phi.n_max + 1
    if f.n_terms < n:
        raise ValueError(f"elliptic series has {f.n_terms} terms, need {n}")
    a, da = f.integer_form()
    den = da
    vals = phi.values
    dphi = lcm(1, *(v.denominator for v in vals))
    # slices r = 0 (N = 4m) and r = 1 (N = 4m - 1)
    s0 = [int(vals[4 * m] * dphi) for m in range(n)]
    s1 = [0] + [int(vals[4 * m - 1] * dphi) for m in range(1, n)]
    p0 = mul_int(a[:n], s0, n)
    p1 = mul_int(a[:n], s1, n)
    out = [Fraction(0)] * (4 * phi.n_max + 1)
    scale = den * dphi
    for m in range(n):
        out[4 * m] = Fraction(p0[m], scale)
        if m:
            out[4 * m - 1] = Fraction(p1[m], scale)
    return JacobiFormIndex1(f.weight + phi.weight, phi.n_max, out)


def specialize_z0(phi: JacobiFormIndex1) -> QSeries:
    """sum_n (sum_r c(n, r)) q^n."""
    out = []
    for n in range(phi.n_max + 1):
        s = phi.values[4 * n]
        for r in range(1, isqrt(4 * n) + 1):
            s += 2 * phi.values[4 * n - r * r]
        out.append(s)
    return QSeries(phi.weight, out)


def jacobi_cusp_generators(n_max: int) -> tuple[JacobiFormIndex1, JacobiFormIndex1]:
    """phi_{10,1} and phi_{12,1}, normalized so that c(1, 1) = 1."""
    e41 = jacobi_eisenstein(4, n_max)
    e61 = jacobi_eisenstein(6, n_max)
    e4 = eisenstein_qexp(4, n_max + 1)
    e6 = eisenstein_qexp(6, n_max + 1)
    phi10 = (scale_by_elliptic(e6, e41) - scale_by_elliptic(e4, e61)).scale(Fraction(1, 144))
    phi12 = (scale_by_elliptic(e4 * e4, e41) - scale_by_elliptic(e6, e61)).scale(Fraction(1, 144))
    phi10 = phi10.scale(1 / phi10.c(1, 1))
    phi12 = phi12.scale(1 / phi12.c(1, 1))
    return phi10, phi12
