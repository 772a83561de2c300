"""Simple number fields Q[x]/(m(x)) and their elements."""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property

import mpmath

from .factor import is_irreducible, poly_mod_p, roots_mod_ell
from .linalg import RationalMatrix, charpoly
from .poly import RationalPolynomial


class NumberField:
    """The field Q[x]/(modulus) for a monic irreducible modulus."""

    def __init__(self, modulus: RationalPolynomial, name: str = "a", check: bool = True):
        if modulus.degree < 1:
            raise ValueError("modulus must have positive degree")
        modulus = modulus.monic()
        if check and not is_irreducible(modulus):
            raise ValueError(f"{modulus} is reducible over Q")
        self.modulus = modulus
        self.name = name

    @classmethod
    def rationals(cls) -> "NumberField":
        return cls(RationalPolynomial.x(), check=False)

    @property
    def degree(self) -> int:
        return self.modulus.degree

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.modulus == other.modulus

    def __hash__(self):
        return hash(("NumberField", self.modulus))

    def __repr__(self):
        return f"NumberField({self.modulus})"

    def __call__(self, value) -> "NumberFieldElement":
        if isinstance(value, NumberFieldElement):
            if value.field != self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, RationalPolynomial):
            return NumberFieldElement(self, value)
        if isinstance(value, (list, tuple)):
            return NumberFieldElement(self, RationalPolynomial(value))
        return NumberFieldElement(self, RationalPolynomial([value]))

    def gen(self) -> "NumberFieldElement":
        return self(RationalPolynomial.x())

    def zero(self) -> "NumberFieldElement":
        return self(0)

    def one(self) -> "NumberFieldElement":
        return self(1)

    @cached_property
    def complex_roots(self):
        """Roots of the modulus at the current working precision (cached at 60 digits)."""
        with mpmath.workdps(60):
            cs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(self.modulus.coeffs)]
            return mpmath.polyroots(cs, maxsteps=200, extraprec=200)

    def real_roots(self):
        return [r.real for r in self.complex_roots if abs(r.imag) < mpmath.mpf(10) ** -40]

    def roots_mod(self, ell: int) -> list[int]:
        return sorted(roots_mod_ell(self.modulus, ell))


class NumberFieldElement:
    """Element of a NumberField stored as a reduced polynomial in the generator."""

    __slots__ = ("field", "coordinates")

    def __init__(self, field: NumberField, coordinates: RationalPolynomial):
        self.field = field
        if coordinates.degree >= field.degree:
            coordinates = coordinates % field.modulus
        self.coordinates = coordinates

    # -- helpers --------------------------------------------------------
    def _coerce(self, other) -> "NumberFieldElement":
        if isinstance(other, NumberFieldElement):
            if other.field is not self.field and other.field != self.field:
                raise ValueError("elements of different fields")
            return other
        return NumberFieldElement(self.field, RationalPolynomial([other]))

    def coefficient_list(self) -> list[Fraction]:
        d = self.field.degree
        return [self.coordinates[i] for i in range(d)]

    def is_rational(self) -> bool:
        return self.coordinates.degree <= 0

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coordinates[0]

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        return NumberFieldElement(self.field, self.coordinates + other.coordinates)

    __radd__ = __add__

    def __neg__(self):
        return NumberFieldElement(self.field, -self.coordinates)

    def __sub__(self, other):
        other = self._coerce(other)
        return NumberFieldElement(self.field, self.coordinates - other.coordinates)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, NumberFieldElement):
            other = self._coerce(other)
            return NumberFieldElement(self.field, self.coordinates * other.coordinates)
        return NumberFieldElement(self.field, self.coordinates * other)

    __rmul__ = __mul__

    def inverse(self) -> "NumberFieldElement":
        if self.coordinates.is_zero():
            raise ZeroDivisionError("inverse of zero")
        g, s, _ = self.coordinates.xgcd(self.field.modulus)
        if g.degree != 0:
            raise ZeroDivisionError("element is not invertible")
        return NumberFieldElement(self.field, s)

    def __truediv__(self, other):
        if isinstance(other, NumberFieldElement):
            return self * self._coerce(other).inverse()
        return NumberFieldElement(self.field, self.coordinates * (1 / Fraction(other)))

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, NumberFieldElement):
            return self.field == other.field and self.coordinates == other.coordinates
        try:
            return self.coordinates == RationalPolynomial([other])
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coordinates[0])
        return hash((self.field.modulus, self.coordinates))

    def __bool__(self):
        return not self.coordinates.is_zero()

    def __repr__(self):
        return str(self)

    def __str__(self):
        s = str(self.coordinates)
        return s.replace("x", self.field.name) if self.field.degree > 1 else s

    # -- invariants -----------------------------------------------------
    def multiplication_matrix(self) -> RationalMatrix:
        """Matrix of y -> self*y on the power basis (row i is self*a^i)."""
        d = self.field.degree
        rows = []
        for i in range(d):
            v = self * self.field(RationalPolynomial([0] * i + [1]))
            rows.append(v.coefficient_list())
        return RationalMatrix(rows)

    def charpoly(self) -> RationalPolynomial:
        return charpoly(self.multiplication_matrix())

    def min_poly(self) -> RationalPolynomial:
        cp = self.charpoly()
        return cp.squarefree_part()

    def norm(self) -> Fraction:
        return self.multiplication_matrix().det()

    def trace(self) -> Fraction:
        return self.multiplication_matrix().trace()

    def denominator(self) -> int:
        return self.coordinates.denominator()

    def mod_ell(self, root: int, ell: int) -> int:
        """Image in F_ell under the embedding sending the generator to root."""
        cs = poly_mod_p(self.coordinates, ell)
        acc = 0
        for c in reversed(cs):
            acc = (acc * root + c) % ell
        return acc

    def embed(self, root):
        """Value under the complex embedding sending the generator to root."""
        return self.coordinates(root)


def nf_min_poly(e) -> RationalPolynomial:
    """Monic minimal polynomial over Q of a field element or rational."""
    if isinstance(e, NumberFieldElement):
        return e.min_poly()
    return RationalPolynomial([-Fraction(e), 1])
