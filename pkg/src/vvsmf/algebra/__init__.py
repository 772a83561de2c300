"""Exact arithmetic foundation."""

from .arith import bernoulli, cohen_H, divisors, is_prime, primes_up_to, sigma
from .factor import CannotSplitError, Factorization, factor_rational, is_irreducible, roots_mod_ell
from .lattice import IntegerLattice, NoRelationFound, algdep, lll_reduce
from .linalg import RationalMatrix, charpoly, nullspace, rref
from .numberfield import NumberField, NumberFieldElement, nf_min_poly
from .poly import RationalPolynomial

__all__ = [
    "bernoulli",
    "cohen_H",
    "divisors",
    "is_prime",
    "primes_up_to",
    "sigma",
    "CannotSplitError",
    "Factorization",
    "factor_rational",
    "is_irreducible",
    "roots_mod_ell",
    "IntegerLattice",
    "NoRelationFound",
    "algdep",
    "lll_reduce",
    "RationalMatrix",
    "charpoly",
    "nullspace",
    "rref",
    "NumberField",
    "NumberFieldElement",
    "nf_min_poly",
    "RationalPolynomial",
]
