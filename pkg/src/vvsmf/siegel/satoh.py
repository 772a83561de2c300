"""Bases of M_{k,2} from brackets of the Igusa generators.

M_{k,2} = [E4,E6] M_{k-10} + [E4,X10] M_{k-14} + [E4,X12] M_{k-16}
        + [E6,X10] C[E6,X10,X12]_{k-16} + [E6,X12] C[E6,X10,X12]_{k-18}
        + [X10,X12] C[X10,X12]_{k-22}
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..algebra.linalg import RationalMatrix
from .expansion import SiegelExpansion, multiply, phi_operator, satoh_bracket, unit_expansion
from .igusa import igusa_generators

GENERATORS = ("E4", "E6", "X10", "X12")
WEIGHTS = {"E4": 4, "E6": 6, "X10": 10, "X12": 12}

SUMMANDS = (
    (("E4", "E6"), 10, GENERATORS),
    (("E4", "X10"), 14, GENERATORS),
    (("E4", "X12"), 16, GENERATORS),
    (("E6", "X10"), 16, ("E6", "X10", "X12")),
    (("E6", "X12"), 18, ("E6", "X10", "X12")),
    (("X10", "X12"), 22, ("X10", "X12")),
)


def monomials(w: int, gens: tuple[str, ...]) -> list[tuple[int, ...]]:
    """Exponent vectors e (aligned with GENERATORS) of weight w using only gens."""
    if w < 0:
        return []
    out = []

    def rec(i, rest, exps):
        if i == len(GENERATORS):
            if rest == 0:
                out.append(tuple(exps))
            return
        name = GENERATORS[i]
        if name not in gens:
            rec(i + 1, rest, exps + [0])
            return
        wt = WEIGHTS[name]
        for e in range(rest // wt + 1):
            rec(i + 1, rest - e * wt, exps + [e])

    rec(0, w, [])
    return sorted(out, reverse=True)


def monomial_label(e: tuple[int, ...]) -> str:
    parts = []
    for name, x in zip(GENERATORS, e):
        if x == 1:
            parts.append(name)
        elif x > 1:
            parts.append(f"{name}^{x}")
    return "*".join(parts) if parts else "1"


def satoh_dimension(k: int) -> int:
    """Total size of the Satoh decomposition of M_{k,2}."""
    return sum(len(monomials(k - shift, gens)) for _, shift, gens in SUMMANDS)


class IgusaRing:
    """Igusa generators at fixed bounds, with cached monomials and brackets."""

    def __init__(self, D: int, S: int, generators=None):
        self.D = D
        self.S = S
        gens = generators if generators is not None else igusa_generators(D, S)
        self.gens = dict(zip(GENERATORS, gens))
        self._mono: dict[tuple[int, ...], SiegelExpansion] = {}
        self._brackets: dict[tuple[str, str], SiegelExpansion] = {}

    def monomial(self, e: tuple[int, ...]) -> SiegelExpansion:
        if e in self._mono:
            return self._mono[e]
        if not any(e):
            out = unit_expansion(self.D, self.S)
        else:
            i = max(i for i, x in enumerate(e) if x)
            rest = list(e)
            rest[i] -= 1
            rest = tuple(rest)
            g = self.gens[GENERATORS[i]]
            out = g if not any(rest) else multiply(self.monomial(rest), g)
        self._mono[e] = out
        return out

    def bracket(self, pair: tuple[str, str]) -> SiegelExpansion:
        if pair not in self._brackets:
            self._brackets[pair] = satoh_bracket(self.gens[pair[0]], self.gens[pair[1]])
        return self._brackets[pair]


@dataclass
class SatohBasis:
    k: int
    elements: list[tuple[str, SiegelExpansion]] = field(default_factory=list)
    # (bracket pair, monomial exponents) behind each element
    recipes: list[tuple[tuple[str, str], tuple[int, ...]]] = field(default_factory=list)

    def __len__(self):
        return len(self.elements)

    @property
    def labels(self) -> list[str]:
        return [lab for lab, _ in self.elements]

    @property
    def forms(self) -> list[SiegelExpansion]:
        return [F for _, F in self.elements]

    def phi_matrix(self) -> RationalMatrix:
        """Rows: Y^2 parts of the singular coefficients [0,0,c], 1 <= c <= S."""
        rows = []
        for F in self.forms:
            q = phi_operator(F)
            rows.append([q[c] for c in range(1, len(q))])
        return RationalMatrix(rows)

    def cusp_relations(self) -> list[list]:
        """Coordinate vectors (over the basis) of a basis of the cusp subspace."""
        return self.phi_matrix().left_nullspace()

    def cusp_dimension(self) -> int:
        return len(self) - self.phi_matrix().rank()


def satoh_basis(k: int, D: int, S: int, ring: IgusaRing | None = None) -> SatohBasis:
    """One expansion per monomial of each summand, multiplied into its bracket."""
    if k % 2 or k < 10:
        raise ValueError("weight must be even and at least 10")
    if ring is None:
        ring = IgusaRing(D, S)
    basis = SatohBasis(k)
    for pair, shift, gens in SUMMANDS:
        for e in monomials(k - shift, gens):
            br = ring.bracket(pair)
            label = f"[{pair[0]},{pair[1]}]"
            if any(e):
                F = multiply(ring.monomial(e), br)
                label = f"{monomial_label(e)}*{label}"
            else:
                F = br
            basis.elements.append((label, F))
            basis.recipes.append((pair, e))
    return basis
