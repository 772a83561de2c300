"""Elliptic modular forms of level one.

Exact q-expansions, the Victor Miller basis, Hecke operators, Galois orbits
of eigenforms and a modular ordinarity test.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

import numpy as np

from . import config
from .algebra.arith import bernoulli, divisors, is_prime
from .algebra.factor import factor_rational
from .algebra.linalg import RationalMatrix, charpoly, nullspace
from .algebra.numberfield import NumberField, NumberFieldElement
from .algebra.series import mul_int, mul_mod


class QSeries:
    """Truncated q-expansion sum_{n < n_terms} a_n q^n with rational a_n."""

    __slots__ = ("weight", "coefficients")

    def __init__(self, weight: int, coefficients: Sequence):
        self.weight = weight
        self.coefficients = tuple(c if isinstance(c, Fraction) else Fraction(c) for c in coefficients)

    @property
    def n_terms(self) -> int:
        return len(self.coefficients)

    def __len__(self):
        return len(self.coefficients)

    def __getitem__(self, n):
        if isinstance(n, slice):
            return self.coefficients[n]
        if n >= len(self.coefficients):
            raise IndexError(f"coefficient q^{n} beyond truncation {self.n_terms}")
        return self.coefficients[n]

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coefficients[:6])
        return f"QSeries(weight={self.weight}, [{head}{', ...' if self.n_terms > 6 else ''}], n={self.n_terms})"

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        n = min(self.n_terms, other.n_terms)
        return self.coefficients[:n] == other.coefficients[:n]

    def __hash__(self):
        return hash((self.weight, self.coefficients))

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def truncate(self, n: int) -> "QSeries":
        if n > self.n_terms:
            raise ValueError("cannot extend a truncated series")
        return QSeries(self.weight, self.coefficients[:n])

    def _common(self, other: "QSeries") -> int:
        if self.weight != other.weight:
            raise ValueError("weights differ")
        return min(self.n_terms, other.n_terms)

    def __add__(self, other: "QSeries") -> "QSeries":
        n = self._common(other)
        return QSeries(self.weight, [a + b for a, b in zip(self.coefficients[:n], other.coefficients[:n])])

    def __sub__(self, other: "QSeries") -> "QSeries":
        n = self._common(other)
        return QSeries(self.weight, [a - b for a, b in zip(self.coefficients[:n], other.coefficients[:n])])

    def __neg__(self):
        return QSeries(self.weight, [-a for a in self.coefficients])

    def scale(self, c) -> "QSeries":
        c = Fraction(c)
        return QSeries(self.weight, [c * a for a in self.coefficients])

    def integer_form(self) -> tuple[list[int], int]:
        """(integers, denominator) with coefficients = integers / denominator."""
        den = lcm(1, *(c.denominator for c in self.coefficients))
        return [c.numerator * (den // c.denominator) for c in self.coefficients], den

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return self.scale(other)
        n = min(self.n_terms, other.n_terms)
        a, da = self.integer_form()
        b, db = other.integer_form()
        prod = mul_int(a, b, n)
        den = da * db
        return QSeries(self.weight + other.weight, [Fraction(v, den) for v in prod])

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "QSeries":
        result = QSeries(0, [1] + [0] * (self.n_terms - 1))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def valuation(self) -> int:
        for i, c in enumerate(self.coefficients):
            if c:
                return i
        return self.n_terms


def one_qexp(n: int) -> QSeries:
    return QSeries(0, [1] + [0] * (n - 1))


def _sigma_table(k: int, n: int) -> list[int]:
    out = [0] * n
    for d in range(1, n):
        dk = d**k
        for m in range(d, n, d):
            out[m] += dk
    return out


def eisenstein_qexp(k: int, n: int) -> QSeries:
    """E_k = 1 - (2k/B_k) sum sigma_{k-1}(m) q^m."""
    if k % 2 or k < 4:
        raise ValueError("Eisenstein series needs even k >= 4")
    c = -Fraction(2 * k) / bernoulli(k)
    sig = _sigma_table(k - 1, n)
    return QSeries(k, [1] + [c * s for s in sig[1:]])


def _euler_product(n: int) -> list[int]:
    """prod_{m >= 1} (1 - q^m) via the pentagonal number theorem."""
    out = [0] * n
    k = 0
    while True:
        hit = False
        for j in ((k * (3 * k - 1)) // 2, (k * (3 * k + 1)) // 2) if k else (0,):
            if j < n:
                out[j] = -1 if k % 2 else 1
                hit = True
        if not hit:
            break
        k += 1
    return out


def delta_qexp(n: int) -> QSeries:
    """Delta = q prod (1 - q^m)^24."""
    if n < 1:
        raise ValueError("need at least one term")
    p = _euler_product(n)
    p2 = mul_int(p, p, n)
    p4 = mul_int(p2, p2, n)
    p8 = mul_int(p4, p4, n)
    p16 = mul_int(p8, p8, n)
    p24 = mul_int(p8, p16, n)
    return QSeries(12, [0] + p24[: n - 1])


def dim_modular(r: int) -> int:
    if r < 0 or r % 2:
        return 0
    if r % 12 == 2:
        return r // 12
    return r // 12 + 1


def dim_cusp(r: int) -> int:
    if r < 12 or r % 2:
        return 0
    return dim_modular(r) - 1


def _miller_generators(r: int, n: int) -> list[QSeries]:
    """Delta^j E4^{3(m-j)} A for j = 1..dim S_r; each starts q^j + ..."""
    d = dim_cusp(r)
    if d == 0:
        return []
    rr = r % 12
    if rr == 2:
        rr = 14
    m = (r - rr) // 12
    e4 = eisenstein_qexp(4, n)
    e6 = eisenstein_qexp(6, n)
    extra = {0: one_qexp(n), 4: e4, 6: e6, 8: e4 * e4, 10: e4 * e6, 14: e4 * e4 * e6}[rr]
    delta = delta_qexp(n)
    e12 = e4 ** 3
    out = []
    for j in range(1, d + 1):
        out.append(QSeries(r, (delta**j * e12 ** (m - j) * extra).coefficients))
    return out


def victor_miller_basis(r: int, n: int) -> list[QSeries]:
    """Integral echelon basis f_i = q^i + O(q^{d+1}) of S_r."""
    d = dim_cusp(r)
    if d == 0:
        return []
    if n < d + 1:
        raise ValueError(f"need at least {d + 1} terms to echelonize S_{r}")
    basis = _miller_generators(r, n)
    for i in range(d - 1, -1, -1):
        f = basis[i]
        for j in range(i + 1, d):
            c = f[j + 1]
            if c:
                f = f - basis[j].scale(c)
        basis[i] = f
    return basis


def hecke_Tn_elliptic(f: QSeries, r: int, m: int) -> QSeries:
    """T_m f with a(n) = sum_{d | (m, n)} d^{r-1} a_f(mn/d^2)."""
    if m < 1:
        raise ValueError("index must be positive")
    n_out = (f.n_terms - 1) // m + 1
    if n_out < 1:
        raise ValueError("series too short for T_m")
    out = []
    for n in range(n_out):
        if n == 0:
            out.append(f[0] * sum(Fraction(d) ** (r - 1) for d in divisors(m)))
            continue
        s = Fraction(0)
        for d in divisors(gcd(m, n)):
            s += d ** (r - 1) * f[m * n // (d * d)]
        out.append(s)
    return QSeries(f.weight, out)


def hecke_matrix(r: int, m: int, basis: list[QSeries] | None = None) -> RationalMatrix:
    """Matrix of T_m on the echelon basis: row i holds the coordinates of T_m f_i."""
    d = dim_cusp(r)
    if basis is None:
        basis = victor_miller_basis(r, m * (d + 1) + 1)
    rows = []
    for f in basis:
        g = hecke_Tn_elliptic(f, r, m)
        rows.append([g[j] for j in range(1, d + 1)])
    return RationalMatrix(rows)


class EllipticEigenform:
    """A normalized eigenform in S_r, a representative of its Galois orbit."""

    def __init__(self, weight: int, field: NumberField, coordinates: list[NumberFieldElement], basis: list[QSeries]):
        self.weight = weight
        self.field = field
        self.coordinates = list(coordinates)
        self._basis = basis
        self._a: dict[int, NumberFieldElement] = {}

    def __repr__(self):
        return f"EllipticEigenform(weight={self.weight}, field={self.field.modulus})"

    @property
    def n_terms(self) -> int:
        return self._basis[0].n_terms if self._basis else 0

    def extend(self, n: int) -> None:
        """Recompute the underlying basis to at least n terms."""
        if n > self.n_terms:
            self._basis = victor_miller_basis(self.weight, n)

    def a(self, n: int) -> NumberFieldElement:
        if n not in self._a:
            if n >= self.n_terms:
                self.extend(2 * n + 1)
            v = self.field.zero()
            for c, f in zip(self.coordinates, self._basis):
                if f[n]:
                    v = v + c * f[n]
            self._a[n] = v
        return self._a[n]

    def coefficients(self, n: int) -> list[NumberFieldElement]:
        """a_0, ..., a_{n-1}."""
        self.extend(n)
        return [self.a(i) for i in range(n)]


def elliptic_eigenforms(r: int, n: int = 0) -> list[EllipticEigenform]:
    """One eigenform per Galois orbit, cut out by the factors of charpoly(T_2)."""
    if r % 2:
        raise ValueError("weight must be even")
    d = dim_cusp(r)
    if d == 0:
        return []
    basis = victor_miller_basis(r, max(n, 2 * (d + 1) + 1))
    T2 = hecke_matrix(r, 2, basis)
    forms = []
    for g, e in factor_rational(charpoly(T2)):
        if e != 1:
            raise ArithmeticError(f"T(2) on S_{r} has a repeated factor {g}")
        K = NumberField(g, check=False)
        lam = K.gen()
        rows = [[K(T2[i, j]) - (lam if i == j else 0) for i in range(d)] for j in range(d)]
        # left eigenvector: v (T2 - lam) = 0, i.e. (T2 - lam)^t v = 0
        kernel = nullspace(rows, one=K.one(), zero=K.zero())
        if len(kernel) != 1:
            raise ArithmeticError("eigenspace is not one-dimensional")
        v = kernel[0]
        first = v[0]
        v = [c / first for c in v]
        forms.append(EllipticEigenform(r, K, v, basis))
    return forms


def mu_elliptic(f: EllipticEigenform, p: int, delta: int) -> NumberFieldElement:
    """Power sums of the Satake data: a_p, a_p^2 - 2p^{r-1}, a_p(a_p^2 - 3p^{r-1})."""
    a = f.a(p)
    w = p ** (f.weight - 1)
    if delta == 1:
        return a
    if delta == 2:
        return a * a - 2 * w
    if delta == 3:
        return a * (a * a - 3 * w)
    raise ValueError("delta must be 1, 2 or 3")


# -- ordinarity ---------------------------------------------------------------

def _eisenstein_mod(k: int, n: int, ell: int) -> np.ndarray:
    c = -Fraction(2 * k) / bernoulli(k)
    c = c.numerator * pow(c.denominator, -1, ell) % ell
    sig = np.zeros(n, dtype=np.int64)
    for d in range(1, n):
        sig[d::d] += pow(d, k - 1, ell)
        if d % 4096 == 0:
            sig %= ell
    sig %= ell
    out = sig * c % ell
    out[0] = 1
    return out


def _delta_mod(n: int, ell: int) -> np.ndarray:
    p = np.array(_euler_product(n), dtype=np.int64) % ell
    p2 = mul_mod(p, p, n, ell)
    p4 = mul_mod(p2, p2, n, ell)
    p8 = mul_mod(p4, p4, n, ell)
    p24 = mul_mod(p8, mul_mod(p8, p8, n, ell), n, ell)
    out = np.zeros(n, dtype=np.int64)
    out[1:] = p24[: n - 1]
    return out


def _det_mod(m: list[list[int]], ell: int) -> int:
    m = [list(r) for r in m]
    n = len(m)
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] % ell), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det = det * m[c][c] % ell
        inv = pow(m[c][c], -1, ell)
        for i in range(c + 1, n):
            f = m[i][c] * inv % ell
            m[i] = [(a - f * b) % ell for a, b in zip(m[i], m[c])]
    return det % ell


def is_ordinary(r: int, ell: int, term_cap: int | None = None) -> bool:
    """True iff T_ell acting on S_r is invertible modulo ell.

    Works with the generators Delta^j E4^{3(m-j)} A, which are unitriangular
    against the echelon basis, so det(a_{g_i}(ell j)) mod ell decides.
    """
    if not is_prime(ell):
        raise ValueError(f"{ell} is not prime")
    d = dim_cusp(r)
    if d == 0:
        return True
    n = d * ell + 1
    cap = config.ORDINARY_TERM_CAP if term_cap is None else term_cap
    if n > cap:
        raise MemoryError(f"ordinarity test needs {n} coefficients, above the cap {cap}")
    rr = r % 12
    if rr == 2:
        rr = 14
    m = (r - rr) // 12
    e4 = _eisenstein_mod(4, n, ell) if rr in (4, 8, 10, 14) or m > 1 else None
    e6 = _eisenstein_mod(6, n, ell) if rr in (6, 10, 14) else None
    extra = np.zeros(n, dtype=np.int64)
    extra[0] = 1
    for k in {0: (), 4: (4,), 6: (6,), 8: (4, 4), 10: (4, 6), 14: (4, 4, 6)}[rr]:
        extra = mul_mod(extra, e4 if k == 4 else e6, n, ell)
    delta = _delta_mod(n, ell)
    e12 = None
    if m > 1:
        e12 = mul_mod(mul_mod(e4, e4, n, ell), e4, n, ell)
    rows = []
    dpow = delta
    for j in range(1, d + 1):
        g = mul_mod(dpow, extra, n, ell)
        for _ in range(m - j):
            g = mul_mod(g, e12, n, ell)
        rows.append([int(g[ell * i]) for i in range(1, d + 1)])
        dpow = mul_mod(dpow, delta, n, ell)
    return _det_mod(rows, ell) != 0
