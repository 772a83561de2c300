import random
from fractions import Fraction

import mpmath
import pytest

from vvsmf.algebra.lattice import IntegerLattice, lll_reduce
from vvsmf.algebra.poly import RationalPolynomial
from vvsmf.eform import delta_qexp, elliptic_eigenforms
from vvsmf.lfunc import (
    _check_parity,
    critical_ratio_minpolys,
    critical_ratios,
    harder_congruence_primes,
    incomplete_gamma,
    lambda_series,
    lambda_value,
    mellin_quadrature,
    norm_from_minpoly,
    ratio_minpoly,
    terms_needed,
)


def poly(*coeffs):
    return RationalPolynomial(list(reversed(coeffs)))


@pytest.fixture(scope="module")
def ratios32():
    (f,) = elliptic_eigenforms(32)
    return critical_ratios(f, "odd", 256)


# -- incomplete gamma --------------------------------------------------------------


def test_incomplete_gamma_closed_forms():
    with mpmath.workprec(200):
        for x in (0.25, 1, 3, 17.5):
            assert abs(incomplete_gamma(1, x, 160) - mpmath.exp(-x)) < mpmath.mpf(2) ** -150
        assert abs(incomplete_gamma(3, 1, 160) - 5 / mpmath.e) < mpmath.mpf(2) ** -150
        assert abs(incomplete_gamma(mpmath.mpf(7) / 2, 0, 160) - mpmath.gamma(3.5)) < mpmath.mpf(2) ** -150


def test_incomplete_gamma_against_mpmath():
    rng = random.Random(8)
    with mpmath.workprec(200):
        for _ in range(20):
            s = mpmath.mpf(rng.randint(1, 40)) / rng.randint(1, 3)
            x = mpmath.mpf(rng.random() * 60)
            ref = mpmath.gammainc(s, x, mpmath.inf)
            assert abs(incomplete_gamma(s, x, 160) - ref) <= abs(ref) * mpmath.mpf(2) ** -150


def test_incomplete_gamma_rejects_negative():
    with pytest.raises(ValueError):
        incomplete_gamma(2, -1)


# -- completed L-values --------------------------------------------------------------


def test_functional_equation_residuals():
    rng = random.Random(12)
    for r in (12, 16, 18, 22, 24):
        f = elliptic_eigenforms(r)[0]
        sign = (-1) ** (r // 2)
        for _ in range(3):
            # dyadic s keeps r - s exact
            s = mpmath.mpf(rng.randint(64, 64 * (r - 1))) / 64
            a = lambda_value(f, s, 128)
            b = lambda_value(f, r - s, 128)
            with mpmath.workprec(200):
                assert abs(a.value - sign * b.value) < a.error_bound + b.error_bound


def test_central_value_vanishes_for_odd_sign():
    (f,) = elliptic_eigenforms(18)
    v = lambda_value(f, 9, 128)
    assert abs(v.value) < v.error_bound


def test_quadrature_agreement():
    a = [int(c) for c in delta_qexp(40).coefficients]
    for s in (1, 4, 6, 11):
        series = lambda_series(a, 12, s, 64)
        quad = mellin_quadrature(a, 12, s, dps=20)
        assert abs(series.value - quad) < abs(series.value) * mpmath.mpf(10) ** -15


def test_precision_self_consistency():
    (f,) = elliptic_eigenforms(16)
    coarse = lambda_value(f, 5, 96)
    fine = lambda_value(f, 5, 192)
    with mpmath.workprec(240):
        assert abs(coarse.value - fine.value) < coarse.error_bound


def test_too_few_terms():
    a = [int(c) for c in delta_qexp(5).coefficients]
    assert terms_needed(12, 6, 128) > 4
    with pytest.raises(ValueError):
        lambda_series(a, 12, 6, 128)


# -- ratios and minimal polynomials ----------------------------------------------------


def test_ratio_r32(ratios32):
    assert [mpmath.nstr(v, 4) for v in ratios32[3]] == ["0.04538", "0.04538"]
    assert abs(ratios32[3][0] - mpmath.mpf("0.045375")) < mpmath.mpf(10) ** -6
    assert abs(ratios32[5][0] - mpmath.mpf("0.002369")) < mpmath.mpf(10) ** -6
    assert ratios32[1] == [1, 1]


def test_minpoly_r32(ratios32):
    p = ratio_minpoly(ratios32[3], 2, 256)
    assert p == poly(23353726728074242500, -2119526470366720695, 48090744655111646)
    with mpmath.workprec(256):
        for v in ratios32[3]:
            cs = [mpmath.mpf(int(c)) for c in reversed(p.coeffs)]
            assert abs(mpmath.polyval(cs, v)) < mpmath.mpf(2) ** -100


def test_short_lattice_vector_at_coarse_scale(ratios32):
    """At C = 2^93 the shortest vector of the relation lattice is a small-height
    quadratic that fits one real embedding only."""
    x, y = ratios32[3]
    C = 2**93
    with mpmath.workprec(296):
        rows = [[1, 0, 0, C], [0, 1, 0, int(mpmath.nint(C * x))], [0, 0, 1, int(mpmath.nint(C * x * x))]]
        first = list(lll_reduce(IntegerLattice(rows))[0])[:3]
        if first[2] < 0:
            first = [-c for c in first]
        assert first == [18826702, -471820065, 1254224510]
        q = lambda t: first[0] + first[1] * t + first[2] * t * t
        assert abs(q(x)) < mpmath.mpf(10) ** -19
        assert abs(q(y)) > 1000


def test_r12_rational_ratios():
    odd = critical_ratio_minpolys(12, "odd", 128)
    assert odd[1] == poly(1, -1)
    assert odd[3] == poly(1620, -691)
    assert all(p.degree == 1 for p in odd.values())
    even = critical_ratio_minpolys(12, "even", 128)
    assert even[2] == poly(1, -1)
    assert all(p.degree == 1 for p in even.values())


def test_parity_mixing_is_a_type_error():
    with pytest.raises(TypeError):
        _check_parity(4, "odd")
    with pytest.raises(TypeError):
        _check_parity(3, "even")
    _check_parity(3, "odd")


def test_norm_from_minpoly():
    assert norm_from_minpoly(poly(2, -3), 1) == Fraction(3, 2)
    assert norm_from_minpoly(poly(2, -3), 2) == Fraction(9, 4)
    assert norm_from_minpoly(poly(5, 1, 7), 2) == Fraction(7, 5)


# -- congruence primes ----------------------------------------------------------------


@pytest.mark.parametrize("r", [12, 16, 20, 24, 28])
def test_harder_vacuity(r):
    assert harder_congruence_primes(r) == {}


def test_harder_r32():
    out = harder_congruence_primes(32, 18)
    assert set(out) == {211}
    assert out[211].ordinary is True and out[211].exponent == 1


def test_harder_r40():
    assert set(harder_congruence_primes(40, 22)) == {509, 1447}
