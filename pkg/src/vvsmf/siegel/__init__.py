"""Fourier expansions of scalar and vector-valued Siegel forms of degree two."""

from .bqf import BQF, canonical_key, disc, reduce_bqf, reduced_forms
from .expansion import SiegelExpansion, TruncationError, multiply, phi_operator, satoh_bracket
from .igusa import igusa_generators, maass_lift
from .satoh import IgusaRing, SatohBasis, satoh_basis, satoh_dimension

__all__ = [
    "BQF",
    "IgusaRing",
    "SatohBasis",
    "SiegelExpansion",
    "TruncationError",
    "canonical_key",
    "disc",
    "igusa_generators",
    "maass_lift",
    "multiply",
    "phi_operator",
    "reduce_bqf",
    "reduced_forms",
    "satoh_basis",
    "satoh_bracket",
    "satoh_dimension",
]
