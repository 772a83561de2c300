from fractions import Fraction

import pytest

from vvsmf.algebra.arith import primes_up_to
from vvsmf.eform import (
    QSeries,
    delta_qexp,
    dim_cusp,
    eisenstein_qexp,
    elliptic_eigenforms,
    hecke_matrix,
    hecke_Tn_elliptic,
    is_ordinary,
    mu_elliptic,
    victor_miller_basis,
)


def brute_tau(n_terms):
    """q prod (1 - q^m)^24 by repeated multiplication."""
    c = [0] * n_terms
    c[1] = 1
    for m in range(1, n_terms):
        for _ in range(24):
            for i in range(n_terms - 1, m - 1, -1):
                c[i] -= c[i - m]
    return c


def test_eisenstein_coefficients():
    assert list(eisenstein_qexp(4, 3)[n] for n in range(3)) == [1, 240, 2160]
    assert list(eisenstein_qexp(6, 2)[n] for n in range(2)) == [1, -504]
    for k in (4, 6, 8, 10, 12, 14):
        assert eisenstein_qexp(k, 5)[0] == 1


def test_eisenstein_rejects_bad_weight():
    with pytest.raises(ValueError):
        eisenstein_qexp(5, 4)
    with pytest.raises(ValueError):
        eisenstein_qexp(2, 4)


def test_delta_values():
    d = delta_qexp(40)
    assert [d[n] for n in range(1, 8)] == [1, -24, 252, -1472, 4830, -6048, -16744]
    assert [d[n] for n in range(40)] == brute_tau(40)


def test_delta_from_eisenstein():
    n = 60
    E4, E6 = eisenstein_qexp(4, n), eisenstein_qexp(6, n)
    D = (E4 * E4 * E4 - E6 * E6).scale(Fraction(1, 1728))
    assert D == delta_qexp(n)


def test_victor_miller_basis():
    assert victor_miller_basis(10, 10) == []
    (b,) = victor_miller_basis(12, 20)
    assert b == delta_qexp(20)
    basis = victor_miller_basis(24, 20)
    assert len(basis) == 2
    for i, f in enumerate(basis, start=1):
        assert [f[n] for n in range(3)] == [1 if n == i else 0 for n in range(3)]
    for r in range(12, 60, 2):
        basis = victor_miller_basis(r, 3 * dim_cusp(r) + 3)
        d = dim_cusp(r)
        assert len(basis) == d
        for i, f in enumerate(basis, start=1):
            assert all(Fraction(f[n]).denominator == 1 for n in range(f.n_terms))
            assert [f[n] for n in range(d + 1)] == [1 if n == i else 0 for n in range(d + 1)]


def test_hecke_on_delta():
    D = delta_qexp(200)
    assert hecke_Tn_elliptic(D, 12, 2).truncate(50) == D.truncate(50).scale(-24)
    assert hecke_Tn_elliptic(D, 12, 7).truncate(25) == D.truncate(25).scale(-16744)
    zero = QSeries(12, [0] * 40)
    assert hecke_Tn_elliptic(zero, 12, 3).is_zero()


def test_hecke_truncation_error():
    with pytest.raises(ValueError):
        hecke_Tn_elliptic(delta_qexp(10), 12, 7).truncate(5)


def test_hecke_commutativity():
    for r in range(24, 42, 2):
        if dim_cusp(r) < 2:
            continue
        T2, T3 = hecke_matrix(r, 2), hecke_matrix(r, 3)
        assert T2 * T3 == T3 * T2


def test_eigenforms():
    (f,) = elliptic_eigenforms(12)
    assert f.a(2) == -24
    (g,) = elliptic_eigenforms(16)
    assert g.field.degree == 1 and g.a(2) == 216
    (h,) = elliptic_eigenforms(32)
    assert h.field.degree == 2
    assert elliptic_eigenforms(10) == []


def test_eigenform_multiplicativity():
    for r in (12, 24, 32, 36):
        for f in elliptic_eigenforms(r):
            assert f.a(1) == 1
            assert f.a(6) == f.a(2) * f.a(3)
            assert f.a(10) == f.a(2) * f.a(5)
            # a_4 = a_2^2 - 2^{r-1}
            assert f.a(4) == f.a(2) * f.a(2) - 2 ** (r - 1)


def test_ramanujan_congruence():
    (f,) = elliptic_eigenforms(12)
    for p in primes_up_to(100):
        assert (int(f.a(p).to_fraction()) - p**11 - 1) % 691 == 0


def test_ordinarity():
    assert is_ordinary(12, 691)
    assert is_ordinary(32, 211)
    assert not is_ordinary(12, 2)


def test_ordinarity_memory_guard():
    with pytest.raises(MemoryError):
        is_ordinary(32, 211, term_cap=100)


def test_mu_elliptic():
    (f,) = elliptic_eigenforms(12)
    assert mu_elliptic(f, 2, 1) == -24
    assert mu_elliptic(f, 2, 2) == -3520
    assert mu_elliptic(f, 2, 3) == 133632
    # power sums of the Satake parameters agree with a_{p^n}
    assert mu_elliptic(f, 3, 2) == f.a(9) - 3**11
