"""Maass lifts of index-one Jacobi forms and the Igusa generators."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from ..algebra.arith import bernoulli, divisors
from ..jacobi import JacobiFormIndex1, jacobi_cusp_generators, jacobi_eisenstein
from .bqf import disc, reduced_forms
from .expansion import SiegelExpansion


def lift_coefficient(ints: list[int], const: int, k: int, f) -> int:
    """Maass lift numerator at an arbitrary semidefinite index f.

    ``ints`` are the Jacobi values by discriminant over a common denominator
    and ``const`` the matching constant term.
    """
    a, b, c = f
    if a == b == c == 0:
        return const
    N = 4 * a * c - b * b
    s = 0
    for d in divisors(gcd(gcd(a, b), c)):
        s += d ** (k - 1) * ints[N // (d * d)]
    return s


def lift_data(phi: JacobiFormIndex1, k: int, D: int) -> tuple[list[int], int, int]:
    """(numerators by disc up to D, constant numerator, common denominator)."""
    vals = phi.values
    den = lcm(1, *(v.denominator for v in vals[: D + 1]))
    const = Fraction(phi.values[0]) * (-bernoulli(k) / (2 * k))
    den = lcm(den, const.denominator)
    return [int(v * den) for v in vals[: D + 1]], int(const * den), den


def maass_lift(phi: JacobiFormIndex1, k: int, D: int, S: int) -> SiegelExpansion:
    """C([a,b,c]) = sum_{d | (a,b,c)} d^{k-1} c_phi(ac/d^2, b/d).

    The constant term is c_phi(0, 0) * (-B_k / 2k).
    """
    if D > 4 * phi.n_max:
        raise ValueError(f"Jacobi form truncated at n_max={phi.n_max} cannot lift to disc {D}")
    ints, const, den = lift_data(phi, k, D)
    table = {g: lift_coefficient(ints, const, k, g) for g in reduced_forms(D, S)}
    return SiegelExpansion(k, 0, D, S, table, Fraction(1, den)).normalized()


def igusa_jacobi_forms(n_max: int) -> dict[str, tuple[JacobiFormIndex1, int, bool]]:
    """name -> (Jacobi form, weight, rescale to constant term 1)."""
    phi10, phi12 = jacobi_cusp_generators(n_max)
    return {
        "E4": (jacobi_eisenstein(4, n_max), 4, True),
        "E6": (jacobi_eisenstein(6, n_max), 6, True),
        "X10": (phi10, 10, False),
        "X12": (phi12, 12, False),
    }


def igusa_generators(D: int, S: int):
    """E4, E6 (constant term 1) and chi10, chi12 (coefficient 1 at [1,1,1])."""
    if S < (D + 3) // 4:
        # products need singular indices up to about D/4
        raise ValueError(f"singular bound S={S} is below D/4 for D={D}")
    n_max = max((D + 3) // 4, 1)
    out = []
    for phi, k, rescale in igusa_jacobi_forms(n_max).values():
        F = maass_lift(phi, k, D, S)
        if rescale:
            F = F.scaled(1 / F.coefficient_at((0, 0, 0)))
        out.append(F)
    return tuple(out)
