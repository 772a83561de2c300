from vvsmf.algebra.arith import cohen_H
from vvsmf.eform import delta_qexp, eisenstein_qexp, one_qexp
from vvsmf.jacobi import (
    JacobiFormIndex1,
    jacobi_cusp_generators,
    jacobi_eisenstein,
    scale_by_elliptic,
    specialize_z0,
)

N = 12


def test_eisenstein_values():
    E41 = jacobi_eisenstein(4, N)
    assert E41.c(0, 0) == 1
    assert (E41.c(1, 0), E41.c(1, 1), E41.c(1, 2)) == (126, 56, 1)
    assert E41.c(1, 3) == 0
    assert E41.c(1, 0) + 2 * E41.c(1, 1) + 2 * E41.c(1, 2) == 240


def test_eisenstein_from_cohen_numbers():
    for k in (4, 6):
        E = jacobi_eisenstein(k, N)
        for n in range(N + 1):
            for r in range(-4, 5):
                if r * r <= 4 * n:
                    assert E.c(n, r) == cohen_H(k - 1, 4 * n - r * r) / cohen_H(k - 1, 0)


def test_specialization_pins_eisenstein():
    assert specialize_z0(jacobi_eisenstein(4, N)) == eisenstein_qexp(4, N + 1)
    assert specialize_z0(jacobi_eisenstein(6, N)) == eisenstein_qexp(6, N + 1)
    zero = JacobiFormIndex1(8, N, [0] * (4 * N + 1))
    assert specialize_z0(zero).is_zero()


def test_theta_decomposition():
    for k in (4, 6):
        E = jacobi_eisenstein(k, N)
        seen = {}
        for n in range(N + 1):
            for r in range(-2 * N, 2 * N + 1):
                if r * r > 4 * n:
                    continue
                key = (4 * n - r * r, r % 2)
                v = E.c(n, r)
                assert seen.setdefault(key, v) == v
                assert E.c(n, -r) == v
                # H(k-1, 0) = zeta(3 - 2k) < 0 for k = 6: E_{6,1} is nonpositive at positive discriminant
                if 4 * n > r * r:
                    assert v >= 0 if k == 4 else v <= 0


def test_cusp_generators():
    phi10, phi12 = jacobi_cusp_generators(N)
    for phi in (phi10, phi12):
        assert phi.c(0, 0) == 0
        assert phi.c(1, 1) == 1
        assert phi.is_cusp()
    assert specialize_z0(phi10).is_zero()
    # the weight-12 specialization is a multiple of Delta; record the constant
    s = specialize_z0(phi12)
    mu = s[1]
    assert s == delta_qexp(N + 1).scale(mu)
    assert mu == 12


def test_scale_by_elliptic():
    E41 = jacobi_eisenstein(4, N)
    assert scale_by_elliptic(one_qexp(N + 1), E41) == E41
    E4 = eisenstein_qexp(4, N + 1)
    prod = scale_by_elliptic(E4, E41)
    assert prod.weight == 8
    assert specialize_z0(prod) == (E4 * E4).truncate(N + 1)


def test_cusp_generators_are_the_standard_combinations():
    phi10, phi12 = jacobi_cusp_generators(N)
    E4, E6 = eisenstein_qexp(4, N + 1), eisenstein_qexp(6, N + 1)
    E41, E61 = jacobi_eisenstein(4, N), jacobi_eisenstein(6, N)
    a = scale_by_elliptic(E6, E41) - scale_by_elliptic(E4, E61)
    b = scale_by_elliptic(E4 * E4, E41) - scale_by_elliptic(E6, E61)
    assert a.scale(1 / a.c(1, 1)) == phi10
    assert b.scale(1 / b.c(1, 1)) == phi12
    assert a.c(1, 1) != 0 and b.c(1, 1) != 0
