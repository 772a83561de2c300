"""Completed L-functions of elliptic eigenforms and their critical values.

Splitting the Mellin integral of f(iy) at y = 1 and using f(i/y) =
(-1)^{r/2} y^r f(iy) gives the rapidly convergent series

    Lambda(f, s) = sum_n a_n [ (2 pi n)^{-s} G(s, 2 pi n)
                               + (-1)^{r/2} (2 pi n)^{s-r} G(r-s, 2 pi n) ]

with G the upper incomplete gamma function.  Critical values are only ever
compared within one parity class, so the periods never need computing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
import sympy

from .algebra.lattice import NoRelationFound, algdep
from .algebra.numberfield import NumberFieldElement
from .algebra.poly import RationalPolynomial
from .eform import EllipticEigenform, elliptic_eigenforms, is_ordinary

DEFAULT_PRECISION = 256
GUARD_BITS = 40


# -- incomplete gamma -------------------------------------------------------------

def incomplete_gamma(s, x, prec: int = DEFAULT_PRECISION):
    """Upper incomplete gamma G(s, x) = int_x^oo t^{s-1} e^{-t} dt to prec bits.

    Continued fraction (modified Lentz) for x > s + 1, otherwise
    G(s) minus the power series of the lower function.
    """
    with mpmath.workprec(prec + GUARD_BITS):
        s = mpmath.mpf(s)
        x = mpmath.mpf(x)
        if x < 0:
            raise ValueError("x must be nonnegative")
        if x == 0:
            return +mpmath.gamma(s)
        eps = mpmath.mpf(2) ** (-prec - 8)
        if x > s + 1:
            tiny = mpmath.mpf(2) ** (-4 * prec)
            b = x + 1 - s
            c = 1 / tiny
            d = 1 / b
            h = d
            for i in range(1, 100 * prec + 1000):
                an = -i * (i - s)
                b += 2
                d = an * d + b
                if abs(d) < tiny:
                    d = tiny
                c = b + an / c
                if abs(c) < tiny:
                    c = tiny
                d = 1 / d
                step = d * c
                h *= step
                if abs(step - 1) < eps:
                    return mpmath.exp(-x + s * mpmath.log(x)) * h
            raise ArithmeticError(f"continued fraction for G({s}, {x}) did not converge")
        # lower gamma series: x^s e^{-x} sum x^n / (s (s+1) ... (s+n))
        term = 1 / s
        total = term
        n = 0
        while True:
            n += 1
            term *= x / (s + n)
            total += term
            if abs(term) < eps * abs(total):
                break
            if n > 100 * prec + 1000:
                raise ArithmeticError(f"series for G({s}, {x}) did not converge")
        lower = mpmath.exp(-x + s * mpmath.log(x)) * total
        return mpmath.gamma(s) - lower


# -- the completed L-function -----------------------------------------------------

@dataclass(frozen=True)
class CompletedLValue:
    r: int
    s: object
    value: mpmath.mpf
    error_bound: mpmath.mpf
    prec: int

    def __float__(self):
        return float(self.value)


def _term_bound(r: int, s, n: int):
    """Bound for the n-th bracket times |a_n| <= d(n) n^{(r-1)/2} <= 2 n^{r/2}."""
    x = 2 * mpmath.pi * n
    out = 0
    for e in (s, r - s):
        # G(e, x) <= x^{e-1} e^{-x} / (1 - (e-1)/x) for x > e - 1
        g = x ** (e - 1) * mpmath.exp(-x) / (1 - max(e - 1, 0) / x)
        out += x ** (-e) * g
    return 2 * mpmath.mpf(n) ** (mpmath.mpf(r) / 2) * out


def terms_needed(r: int, s, prec: int) -> int:
    """Smallest N with the tail beyond N below 2^(-prec - 2)."""
    with mpmath.workprec(64):
        target = mpmath.mpf(2) ** (-prec - 2)
        n = max(2, int(r))
        while True:
            # the bound decays at least geometrically with ratio e^{-2 pi} (1 + 1/n)^{r/2+1}
            b = _term_bound(r, max(s, r - s), n + 1)
            ratio = mpmath.exp(-2 * mpmath.pi) * (1 + mpmath.mpf(1) / (n + 1)) ** (r / 2 + 1)
            if ratio < 1 and b / (1 - ratio) < target:
                return n
            n += 1


def _real_coefficient_tables(f: EllipticEigenform, n: int, prec: int) -> list[list]:
    """a_1..a_n under each real embedding of the coefficient field."""
    coeffs = f.coefficients(n + 1)
    K = f.field
    with mpmath.workprec(prec + GUARD_BITS):
        if K.degree == 1:
            return [[mpmath.mpf(c.to_fraction().numerator) / c.to_fraction().denominator for c in coeffs]]
        roots = field_real_roots(K.modulus, prec)
        out = []
        for root in roots:
            out.append([_embed(c, root) for c in coeffs])
        return out


def field_real_roots(modulus: RationalPolynomial, prec: int) -> list:
    with mpmath.workprec(prec + GUARD_BITS):
        cs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(modulus.coeffs)]
        roots = mpmath.polyroots(cs, maxsteps=1000, extraprec=2 * prec)
        thr = mpmath.mpf(2) ** (-prec / 2)
        real = sorted(r.real for r in roots if abs(mpmath.im(r)) < thr)
        if len(real) != modulus.degree:
            raise ArithmeticError("coefficient field is not totally real")
        return real


def _embed(c: NumberFieldElement, root):
    acc = mpmath.mpf(0)
    for x in reversed(c.coefficient_list()):
        acc = acc * root + mpmath.mpf(x.numerator) / x.denominator
    return acc


def lambda_series(a: list, r: int, s, prec: int = DEFAULT_PRECISION) -> CompletedLValue:
    """Lambda(f, s) from real coefficients a[0..N] (a[0] = 0 for cusp forms)."""
    N = len(a) - 1
    need = terms_needed(r, s, prec)
    if N < need:
        raise ValueError(f"need {need} q-expansion terms for {prec} bits at s={s}, have {N}")
    sign = 1 if (r // 2) % 2 == 0 else -1
    with mpmath.workprec(prec + GUARD_BITS):
        s_ = mpmath.mpf(s)
        total = mpmath.mpf(0)
        biggest = mpmath.mpf(0)
        for n in range(1, need + 1):
            if not a[n]:
                continue
            x = 2 * mpmath.pi * n
            term = x ** (-s_) * incomplete_gamma(s_, x, prec) + sign * x ** (s_ - r) * incomplete_gamma(r - s_, x, prec)
            term *= a[n]
            biggest = max(biggest, abs(term))
            total += term
        tail = mpmath.mpf(2) ** (-prec - 2)
        rounding = (need + 1) * max(biggest, abs(total), 1) * mpmath.mpf(2) ** (-prec)
        return CompletedLValue(r, s, +total, tail + rounding, prec)


def lambda_value(f: EllipticEigenform, s, prec: int = DEFAULT_PRECISION, embedding: int = 0) -> CompletedLValue:
    """Lambda(f, s) under one real embedding of the coefficient field."""
    r = f.weight
    N = terms_needed(r, s, prec)
    table = _real_coefficient_tables(f, N, prec)[embedding]
    return lambda_series(table, r, s, prec)


def mellin_quadrature(a: list, r: int, s, dps: int = 20):
    """Direct numerical integral of f(iy) y^{s-1} over (0, oo), for cross-checks."""
    with mpmath.workdps(dps + 10):
        sign = 1 if (r // 2) % 2 == 0 else -1

        def f(y):
            return mpmath.fsum(a[n] * mpmath.exp(-2 * mpmath.pi * n * y) for n in range(1, len(a)))

        upper = mpmath.quad(lambda y: f(y) * y ** (s - 1), [1, 2, mpmath.inf])
        lower = mpmath.quad(lambda y: sign * f(y) * y ** (r - s - 1), [1, 2, mpmath.inf])
        return upper + lower


# -- critical ratios --------------------------------------------------------------

def reference_point(parity: str) -> int:
    """t0 with ratios Lambda(f, t) / Lambda(f, t0): 1 for odd t, 2 for even t."""
    if parity not in ("odd", "even"):
        raise ValueError("parity must be 'odd' or 'even'")
    return 1 if parity == "odd" else 2


def critical_ratios(f: EllipticEigenform, parity: str, prec: int = DEFAULT_PRECISION) -> dict[int, list]:
    """t -> [Lambda(f, t) / Lambda(f, t0) for each real embedding], t of one parity."""
    r = f.weight
    t0 = reference_point(parity)
    ts = [t for t in range(1, r) if (t % 2 == 1) == (parity == "odd")]
    N = max(terms_needed(r, t, prec) for t in ts)
    tables = _real_coefficient_tables(f, N, prec)
    out: dict[int, list] = {t: [] for t in ts}
    with mpmath.workprec(prec + GUARD_BITS):
        for table in tables:
            base = lambda_series(table, r, t0, prec).value
            for t in ts:
                out[t].append(lambda_series(table, r, t, prec).value / base)
    return out


def _check_parity(t: int, parity: str) -> None:
    if (t % 2 == 1) != (parity == "odd"):
        raise TypeError(f"t={t} does not belong to the {parity} ratio class")


def ratio_minpoly(values: list, degree: int, prec: int) -> RationalPolynomial:
    """Minimal polynomial of a field element known through all its real images."""
    last = None
    for d in range(1, degree + 1):
        if degree % d:
            continue
        try:
            p = algdep(values[0], d, prec)
        except NoRelationFound as exc:
            last = exc
            continue
        if p.degree != d:
            continue
        with mpmath.workprec(prec):
            cs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(p.coeffs)]
            # same strict bound as algdep, in every embedding
            tol = max(abs(c) for c in cs) * mpmath.mpf(2) ** (-3 * prec / 4)
            ok = all(abs(mpmath.polyval(cs, v)) <= tol for v in values)
        if ok:
            return p
    raise NoRelationFound(f"no minimal polynomial of degree <= {degree} at {prec} bits") from last


def critical_ratio_minpolys(
    r: int, parity: str, prec: int = DEFAULT_PRECISION, form: EllipticEigenform | None = None, ts=None
) -> dict[int, RationalPolynomial]:
    """t -> minimal polynomial of Lambda(f, t) / Lambda(f, t0) over Q."""
    if form is None:
        forms = elliptic_eigenforms(r)
        if not forms:
            return {}
        form = forms[0]
    ratios = critical_ratios(form, parity, prec)
    out = {}
    for t in sorted(ratios):
        if ts is not None and t not in ts:
            continue
        _check_parity(t, parity)
        out[t] = ratio_minpoly(ratios[t], form.field.degree, prec)
    return out


def norm_from_minpoly(p: RationalPolynomial, field_degree: int) -> Fraction:
    """Norm from the field of degree field_degree of a root of the minimal polynomial p."""
    m = p.monic()
    d = m.degree
    n = Fraction((-1) ** d) * m.coeffs[0]
    return n ** (field_degree // d)


@dataclass(frozen=True)
class CongruencePrime:
    ell: int
    exponent: int
    ordinary: bool | None  # None when the test exceeded the size cap


def _escalating_minpoly(f: EllipticEigenform, parity: str, t: int, prec: int, max_prec: int) -> RationalPolynomial:
    while True:
        try:
            return critical_ratio_minpolys(f.weight, parity, prec, form=f, ts=[t])[t]
        except NoRelationFound:
            if 2 * prec > max_prec:
                raise NoRelationFound(f"no minimal polynomial up to {prec} bits; retry with max_prec={4 * prec}")
            prec *= 2


def harder_congruence_primes(
    r: int,
    t: int | None = None,
    bound: int | None = None,
    prec: int = DEFAULT_PRECISION,
    check_ordinary: bool = True,
    max_prec: int = 4096,
) -> dict[int, CongruencePrime]:
    """Large primes dividing the numerator of Norm(Lambda(f, t) / Lambda(f, t0)).

    Primes at most max(bound, r) count as small and are dropped.  The
    working precision doubles (up to max_prec) until the ratio is recognized.
    """
    if t is None:
        t = r // 2 + 2
    bound = r if bound is None else max(bound, r)
    parity = "odd" if t % 2 else "even"
    out: dict[int, CongruencePrime] = {}
    for f in elliptic_eigenforms(r):
        p = _escalating_minpoly(f, parity, t, prec, max_prec)
        norm = norm_from_minpoly(p, f.field.degree)
        num = abs(norm.numerator)
        if num == 0:
            continue
        for ell, e in sorted(sympy.factorint(num).items()):
            if ell <= bound:
                continue
            ordinary = None
            if check_ordinary:
                try:
                    ordinary = is_ordinary(r, ell)
                except MemoryError:
                    ordinary = None
            out[ell] = CongruencePrime(ell, e, ordinary)
    return out


__all__ = [
    "CompletedLValue",
    "CongruencePrime",
    "critical_ratio_minpolys",
    "critical_ratios",
    "harder_congruence_primes",
    "incomplete_gamma",
    "lambda_series",
    "lambda_value",
    "mellin_quadrature",
    "norm_from_minpoly",
    "ratio_minpoly",
    "terms_needed",
]
