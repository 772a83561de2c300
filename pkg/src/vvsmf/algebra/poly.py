"""Dense univariate polynomials with rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class RationalPolynomial:
    """Polynomial over Q, coefficients stored lowest degree first.

    Instances are immutable; arithmetic returns new objects.  The zero
    polynomial has an empty coefficient list and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    # -- construction helpers -------------------------------------------
    @classmethod
    def x(cls) -> "RationalPolynomial":
        return cls([0, 1])

    @classmethod
    def constant(cls, c) -> "RationalPolynomial":
        return cls([c])

    @classmethod
    def from_roots(cls, roots: Sequence) -> "RationalPolynomial":
        p = cls([1])
        for r in roots:
            p = p * cls([-_frac(r), 1])
        return p

    # -- basic properties -----------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalPolynomial):
            try:
                other = RationalPolynomial([other])
            except (TypeError, ValueError):
                return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"RationalPolynomial({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                body = str(a)
            else:
                mono = "x" if i == 1 else f"x^{i}"
                body = mono if a == 1 else f"{a}*{mono}"
            terms.append((sign, body))
        s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            s += f" {sign} {body}"
        return s

    # -- arithmetic -----------------------------------------------------
    def _coerce(self, other) -> "RationalPolynomial":
        if isinstance(other, RationalPolynomial):
            return other
        return RationalPolynomial([other])

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return RationalPolynomial(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return RationalPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, RationalPolynomial):
            c = _frac(other)
            return RationalPolynomial(c * a for a in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return RationalPolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = RationalPolynomial([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: "RationalPolynomial"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lc = other.leading()
        if len(rem) - 1 < dq:
            return RationalPolynomial(), self
        quo = [Fraction(0)] * (len(rem) - dq)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i] / lc
            quo[i - dq] = c
            if c:
                for j in range(dq + 1):
                    rem[i - dq + j] -= c * other.coeffs[j]
        return RationalPolynomial(quo), RationalPolynomial(rem[:dq])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "RationalPolynomial":
        return RationalPolynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def monic(self) -> "RationalPolynomial":
        if self.is_zero():
            return self
        return self * (1 / self.leading())

    def gcd(self, other: "RationalPolynomial") -> "RationalPolynomial":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def xgcd(self, other: "RationalPolynomial"):
        """Return (g, s, t) with s*self + t*other = g monic."""
        r0, r1 = self, other
        s0, s1 = RationalPolynomial([1]), RationalPolynomial()
        t0, t1 = RationalPolynomial(), RationalPolynomial([1])
        while not r1.is_zero():
            q, r = r0.divmod(r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        lc = r0.leading()
        return r0 * (1 / lc), s0 * (1 / lc), t0 * (1 / lc)

    def squarefree_part(self) -> "RationalPolynomial":
        if self.degree < 1:
            return self.monic()
        return (self // self.gcd(self.derivative())).monic()

    def squarefree_decomposition(self) -> list[tuple["RationalPolynomial", int]]:
        """Yun's algorithm: monic squarefree factors with multiplicities."""
        f = self.monic()
        out = []
        if f.degree < 1:
            return out
        d = f.derivative()
        a = f.gcd(d)
        b = f // a
        c = d // a
        i = 1
        while b.degree >= 1:
            dd = c - b.derivative()
            y = b.gcd(dd)
            if y.degree >= 1:
                out.append((y, i))
            b = b // y
            c = dd // y
            i += 1
        return out

    def compose(self, other: "RationalPolynomial") -> "RationalPolynomial":
        acc = RationalPolynomial()
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    # -- integer views --------------------------------------------------
    def denominator(self) -> int:
        return lcm(1, *(c.denominator for c in self.coeffs))

    def primitive_integer(self) -> list[int]:
        """Integer coefficient list of the primitive multiple with lc > 0."""
        if not self.coeffs:
            return []
        d = self.denominator()
        ints = [int(c * d) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        ints = [v // g for v in ints]
        if ints[-1] < 0:
            ints = [-v for v in ints]
        return ints


def poly_from_int_list(coeffs: Sequence[int]) -> RationalPolynomial:
    return RationalPolynomial(Fraction(c) for c in coeffs)
