import random
from fractions import Fraction

import pytest

from vvsmf.eform import eisenstein_qexp
from vvsmf.jacobi import jacobi_cusp_generators
from vvsmf.siegel.bqf import act_on_poly, disc, reduce_bqf, reduced_forms, transform
from vvsmf.siegel.expansion import (
    SiegelExpansion,
    TruncationError,
    direct_bracket_at,
    direct_product_at,
    linear_combination,
    multiply,
    phi_operator,
    satoh_bracket,
    unit_expansion,
)
from vvsmf.siegel.igusa import maass_lift
from vvsmf.siegel.satoh import satoh_basis, satoh_dimension

I2 = ((1, 0), (0, 1))


def random_unimodular(rng, steps=4):
    A = I2
    for _ in range(steps):
        n = rng.randint(-2, 2)
        M = rng.choice([((1, n), (0, 1)), ((1, 0), (n, 1)), ((0, 1), (1, 0)), ((1, 0), (0, -1))])
        A = ((A[0][0] * M[0][0] + A[0][1] * M[1][0], A[0][0] * M[0][1] + A[0][1] * M[1][1]),
             (A[1][0] * M[0][0] + A[1][1] * M[1][0], A[1][0] * M[0][1] + A[1][1] * M[1][1]))
    return A


# -- reduction and the polynomial action -------------------------------------------


def test_reduce_examples():
    assert reduce_bqf((1, 1, 1)) == ((1, 1, 1), I2)
    g, A = reduce_bqf((1, -1, 1))
    assert g == (1, 1, 1) and transform((1, -1, 1), A) == g
    g, A = reduce_bqf((2, 4, 5))
    assert g == (2, 0, 3) and transform((2, 4, 5), A) == g
    assert reduce_bqf((4, 4, 1))[0] == (0, 0, 1)
    assert reduce_bqf((0, 0, 0))[0] == (0, 0, 0)


def test_reduce_rejects_indefinite():
    with pytest.raises(ValueError):
        reduce_bqf((1, 3, 1))


def test_reduce_random():
    rng = random.Random(2)
    for g in reduced_forms(200, 10):
        A = random_unimodular(rng)
        f = transform(g, A)
        red, B = reduce_bqf(f)
        assert red == g
        assert transform(f, B) == g


def test_act_on_poly_examples():
    v = (Fraction(3), Fraction(-2), Fraction(5))
    assert act_on_poly(I2, v) == v
    assert act_on_poly(((1, 0), (0, 7)), (0, 1, 0)) == (0, 7, 0)
    assert act_on_poly(((0, 1), (1, 0)), (1, 0, 0)) == (0, 0, 1)
    assert act_on_poly(((0, 1), (1, 0)), 42) == 42


def test_reduced_forms_order():
    keys = reduced_forms(60, 5)
    definite = [g for g in keys if disc(g)]
    assert definite == sorted(definite, key=lambda g: (disc(g), g[0], g[1]))
    assert keys[-6:] == [(0, 0, c) for c in range(6)]
    assert all(0 <= b <= a <= c for a, b, c in definite)


# -- ring structure ----------------------------------------------------------------


def test_unit_and_weights(small_ring):
    E4, E6 = small_ring.gens["E4"], small_ring.gens["E6"]
    one = unit_expansion(E4.D, E4.S)
    assert multiply(one, E4) == E4
    P = multiply(E4, E6)
    assert P.weight == (10, 0)
    assert multiply(E4, E4).coefficient_at((0, 0, 1)) == 480


def test_ring_laws(small_ring):
    g = small_ring.gens
    E4, E6, X10 = g["E4"], g["E6"], g["X10"]
    assert multiply(E4, E6) == multiply(E6, E4)
    assert multiply(multiply(E4, E6), X10) == multiply(E4, multiply(E6, X10))
    # distributivity over a rational combination
    c = Fraction(3, 7)
    lhs = multiply(E4, linear_combination([1, c], [multiply(E4, E6), X10]))
    rhs = linear_combination([1, c], [multiply(E4, multiply(E4, E6)), multiply(E4, X10)])
    assert lhs == rhs


def test_products_match_direct_convolution(small_ring):
    rng = random.Random(4)
    E4, X10 = small_ring.gens["E4"], small_ring.gens["X10"]
    P = multiply(E4, X10)
    keys = [g for g in reduced_forms(40, 10)]
    for g in rng.sample(keys, 10):
        f = transform(g, random_unimodular(rng, 2))
        if max(f[0], f[2]) > 12:
            f = g
        assert P.coefficient_at(f) == direct_product_at(E4, X10, f)


def test_phi_is_multiplicative(small_ring):
    E4, E6 = small_ring.gens["E4"], small_ring.gens["E6"]
    assert phi_operator(multiply(E4, E6)) == phi_operator(E4) * phi_operator(E6)


# -- Maass lift and the Igusa generators -----------------------------------------------


def test_maass_lift_coefficients():
    phi10, _ = jacobi_cusp_generators(8)
    F = maass_lift(phi10, 10, 32, 8)
    assert F.coefficient_at((1, 1, 1)) == phi10.c(1, 1) == 1
    assert F.coefficient_at((2, 2, 2)) == phi10.c(4, 2) + 2**9 * phi10.c(1, 1)
    assert F.is_cusp()


def test_maass_lift_truncation():
    phi10, _ = jacobi_cusp_generators(4)
    with pytest.raises(ValueError):
        maass_lift(phi10, 10, 40, 10)


def test_igusa_generators(small_ring):
    g = small_ring.gens
    assert g["E4"].coefficient_at((0, 0, 0)) == 1
    assert g["X10"].coefficient_at((1, 1, 1)) == 1
    assert g["X12"].coefficient_at((1, 1, 1)) == 1
    S = g["E4"].S
    assert phi_operator(g["E4"]) == eisenstein_qexp(4, S + 1)
    assert phi_operator(g["E6"]) == eisenstein_qexp(6, S + 1)
    assert phi_operator(g["X10"]).is_zero()
    assert phi_operator(g["X12"]).is_zero()


def test_out_of_bounds_index(small_ring):
    with pytest.raises(TruncationError):
        small_ring.gens["E4"].coefficient_at((5, 0, 5))


# -- bracket ----------------------------------------------------------------------------


def test_bracket_examples(small_ring):
    E4, E6 = small_ring.gens["E4"], small_ring.gens["E6"]
    B = satoh_bracket(E4, E6)
    assert B.weight == (10, 2)
    assert B.coefficient_at((0, 0, 0)) == (0, 0, 0)
    assert B.coefficient_at((0, 0, 1)) == (0, 0, 144)
    assert satoh_bracket(E4, E4).is_zero()


def test_bracket_rejects_vector_input(small_ring):
    E4, E6 = small_ring.gens["E4"], small_ring.gens["E6"]
    with pytest.raises(ValueError):
        satoh_bracket(satoh_bracket(E4, E6), E4)


def test_transformation_rule_against_direct_convolution(ring):
    """Coefficients at non-reduced indices agree with a convolution computed there."""
    rng = random.Random(16)
    g = ring.gens
    pairs = [("E4", "X12"), ("E6", "X10"), ("E4", "E6")]
    keys = [h for h in reduced_forms(40, 0) if disc(h)]
    checked = 0
    while checked < 50:
        pair = pairs[checked % 3]
        B = ring.bracket(pair)
        h = rng.choice(keys)
        f = transform(h, random_unimodular(rng, 3))
        if max(f[0], f[2]) > 14:
            continue
        assert B.coefficient_at(f) == direct_bracket_at(g[pair[0]], g[pair[1]], f), (pair, f)
        checked += 1


def test_bracket_leibniz_rule(small_ring):
    # (k_G + k_H) [F, G H] = k_G H [F, G] + k_H G [F, H]
    g = small_ring.gens
    F, G, H = g["E4"], g["E6"], g["X10"]
    lhs = satoh_bracket(F, multiply(G, H)).scaled(16)
    rhs = linear_combination([6, 10], [multiply(H, satoh_bracket(F, G)), multiply(G, satoh_bracket(F, H))])
    assert lhs == rhs


# -- bases ----------------------------------------------------------------------------------


def test_satoh_basis_sizes(ring):
    assert len(satoh_basis(10, ring.D, ring.S, ring)) == 1
    assert len(satoh_basis(16, ring.D, ring.S, ring)) == 3
    b20 = satoh_basis(20, ring.D, ring.S, ring)
    assert len(b20) == 4 and b20.cusp_dimension() == 3
    for k in range(10, 24, 2):
        assert len(satoh_basis(k, ring.D, ring.S, ring)) == satoh_dimension(k)


def test_satoh_basis_rejects_odd_weight(ring):
    with pytest.raises(ValueError):
        satoh_basis(15, ring.D, ring.S, ring)


def test_cusp_brackets(ring):
    for pair in [("E4", "X10"), ("E4", "X12"), ("E6", "X10"), ("E6", "X12"), ("X10", "X12")]:
        assert ring.bracket(pair).is_cusp()
    assert not ring.bracket(("E4", "E6")).is_cusp()


def test_expansion_equality_and_scale():
    F = SiegelExpansion(4, 0, 10, 2, {(1, 1, 1): 2, (0, 0, 1): 4}, Fraction(1, 2))
    G = SiegelExpansion(4, 0, 10, 2, {(1, 1, 1): 1, (0, 0, 1): 2}, Fraction(1))
    assert F == G
    assert F.normalized().table[(1, 1, 1)] == 1
