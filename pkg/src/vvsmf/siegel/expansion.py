"""Fourier expansions of degree-two Siegel modular forms.

An expansion of weight (k, j), j in {0, 2}, stores one value per reduced
positive definite index of disc <= D and per singular index [0, 0, c] with
c <= S.  Rational expansions keep integer numerators and a common
``scale``; values at other indices follow from the transformation rule

    C(f.A) = det(A)^k rho(A) C(f)       (A in GL2(Z)),

which is how the product and bracket convolutions see the expansion.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt, lcm
from typing import Iterable, Sequence

from .bqf import BQF, act_on_poly, det, disc, inverse_unimodular, reduce_bqf, reduced_forms


class TruncationError(IndexError):
    """A requested index lies outside the stored bounds."""


def _zero(j: int):
    return 0 if j == 0 else (0, 0, 0)


class SiegelExpansion:
    """Truncated Fourier expansion of weight (k, j)."""

    __slots__ = ("k", "j", "D", "S", "table", "scale", "field", "extra")

    def __init__(self, k: int, j: int, D: int, S: int, table: dict, scale=Fraction(1), field=None):
        if j not in (0, 2):
            raise ValueError("only j = 0 and j = 2 are supported")
        self.k = k
        self.j = j
        self.D = D
        self.S = S
        self.table = table
        self.scale = Fraction(scale)
        self.field = field
        # numerators at reduced indices beyond the bounds, filled on demand
        self.extra: dict = {}

    # -- basic access ---------------------------------------------------
    @property
    def weight(self) -> tuple[int, int]:
        return (self.k, self.j)

    def __repr__(self):
        f = "" if self.field is None else f", field={self.field.modulus}"
        return f"SiegelExpansion(weight=({self.k},{self.j}), D={self.D}, S={self.S}{f})"

    def keys(self) -> list[BQF]:
        return reduced_forms(self.D, self.S)

    def in_bounds(self, g: BQF) -> bool:
        if disc(g) == 0:
            return g[2] <= self.S
        return disc(g) <= self.D

    def raw(self, g: BQF):
        """Stored numerator at a reduced key."""
        if not self.in_bounds(g):
            if g in self.extra:
                return self.extra[g]
            raise TruncationError(f"insufficient truncation: index {list(g)} outside D={self.D}, S={self.S}")
        return self.table.get(g, _zero(self.j))

    def raw_at(self, f: BQF):
        """Numerator at an arbitrary semidefinite index."""
        g, A = reduce_bqf(f)
        v = self.raw(g)
        if self.j == 2:
            v = act_on_poly(inverse_unimodular(A), v)
        if self.k % 2 and det(A) == -1:
            v = -v if self.j == 0 else tuple(-x for x in v)
        return v

    def coefficient_at(self, f: BQF):
        """C(f): a scalar (j = 0) or a triple (X^2, XY, Y^2) (j = 2)."""
        v = self.raw_at(tuple(f))
        return self._scaled(v)

    def __getitem__(self, f):
        return self.coefficient_at(tuple(f))

    def _scaled(self, v):
        if self.field is not None:
            return v
        if self.j == 0:
            return v * self.scale
        return tuple(x * self.scale for x in v)

    # -- linear structure -------------------------------------------------
    def _check_compatible(self, other: "SiegelExpansion"):
        if (self.k, self.j) != (other.k, other.j):
            raise ValueError("weights differ")

    def truncate(self, D: int, S: int) -> "SiegelExpansion":
        if D > self.D or S > self.S:
            raise TruncationError("cannot enlarge bounds by truncation")
        table = {g: v for g, v in self.table.items() if (disc(g) == 0 and g[2] <= S) or (disc(g) and disc(g) <= D)}
        return SiegelExpansion(self.k, self.j, D, S, table, self.scale, self.field)

    def normalized(self) -> "SiegelExpansion":
        """Same expansion with primitive integer numerators and adjusted scale."""
        if self.field is not None:
            return self
        g = 0
        for v in self.table.values():
            for x in (v if self.j else (v,)):
                g = gcd(g, x)
        if g in (0, 1):
            return self
        if self.j == 0:
            table = {key: v // g for key, v in self.table.items()}
        else:
            table = {key: tuple(x // g for x in v) for key, v in self.table.items()}
        return SiegelExpansion(self.k, self.j, self.D, self.S, table, self.scale * g)

    def scaled(self, c) -> "SiegelExpansion":
        return SiegelExpansion(self.k, self.j, self.D, self.S, dict(self.table), self.scale * Fraction(c), self.field)

    def __eq__(self, other):
        if not isinstance(other, SiegelExpansion):
            return NotImplemented
        if (self.k, self.j, self.D, self.S) != (other.k, other.j, other.D, other.S):
            return False
        return all(self.coefficient_at(g) == other.coefficient_at(g) for g in self.keys())

    def __hash__(self):
        return hash((self.k, self.j, self.D, self.S))

    def is_cusp(self) -> bool:
        z = _zero(self.j)
        return all(self.table.get((0, 0, c), z) == z for c in range(self.S + 1))

    def is_zero(self) -> bool:
        z = _zero(self.j)
        return all(v == z for v in self.table.values())


def linear_combination(coeffs: Sequence, forms: Sequence[SiegelExpansion]) -> SiegelExpansion:
    """sum c_i F_i over Q, or over a number field when the c_i are field elements."""
    if not forms:
        raise ValueError("empty combination")
    k, j = forms[0].k, forms[0].j
    D = min(F.D for F in forms)
    S = min(F.S for F in forms)
    for F in forms:
        if (F.k, F.j) != (k, j):
            raise ValueError("weights differ")
    field = None
    for c in coeffs:
        if hasattr(c, "field"):
            field = c.field
    keys = reduced_forms(D, S)
    if field is None:
        cs = [Fraction(c) * F.scale for c, F in zip(coeffs, forms)]
        den = lcm(1, *(c.denominator for c in cs))
        ints = [int(c * den) for c in cs]
        table = {}
        for g in keys:
            if j == 0:
                table[g] = sum(c * F.table.get(g, 0) for c, F in zip(ints, forms))
            else:
                vs = [F.table.get(g, (0, 0, 0)) for F in forms]
                table[g] = tuple(sum(c * v[i] for c, v in zip(ints, vs)) for i in range(3))
        return SiegelExpansion(k, j, D, S, table, Fraction(1, den)).normalized()
    table = {}
    zero = field.zero()
    for g in keys:
        if j == 0:
            table[g] = sum((c * (F.table.get(g, 0) * F.scale) for c, F in zip(coeffs, forms)), zero)
        else:
            vs = [F.coefficient_at(g) for F in forms]
            table[g] = tuple(sum((c * v[i] for c, v in zip(coeffs, vs)), zero) for i in range(3))
    return SiegelExpansion(k, j, D, S, table, 1, field)


def add(F: SiegelExpansion, G: SiegelExpansion) -> SiegelExpansion:
    return linear_combination([1, 1], [F, G])


# -- convolution plans ---------------------------------------------------------

class _Plan:
    """All decompositions h = f1 + f2 into semidefinite forms, for reduced h.

    ``box`` lists the distinct summands; ``pairs[h]`` holds index lists into
    ``box`` for f1 and f2 (same length).
    """

    def __init__(self, D: int):
        self.D = D
        box_index: dict[BQF, int] = {}
        box: list[BQF] = []

        def idx(f):
            i = box_index.get(f)
            if i is None:
                i = box_index[f] = len(box)
                box.append(f)
            return i

        self.targets = [g for g in reduced_forms(D, 0) if disc(g) > 0]
        self.pairs: list[tuple[list[int], list[int]]] = []
        for a, b, c in self.targets:
            i1, i2 = [], []
            for a1 in range(a + 1):
                a2 = a - a1
                for c1 in range(c + 1):
                    c2 = c - c1
                    r1 = isqrt(4 * a1 * c1)
                    r2 = isqrt(4 * a2 * c2)
                    lo = max(-r1, b - r2)
                    hi = min(r1, b + r2)
                    for b1 in range(lo, hi + 1):
                        i1.append(idx((a1, b1, c1)))
                        i2.append(idx((a2, b - b1, c2)))
            self.pairs.append((i1, i2))
        self.box = box
        self.max_singular = max((f[2] for f in box if disc(f) == 0 and f[0] == 0), default=0)

    @property
    def n_pairs(self) -> int:
        return sum(len(p[0]) for p in self.pairs)


@lru_cache(maxsize=4)
def convolution_plan(D: int) -> _Plan:
    return _Plan(D)


def _box_values(F: SiegelExpansion, plan: _Plan) -> list:
    return [F.raw_at(f) for f in plan.box]


def _out_bounds(F: SiegelExpansion, G: SiegelExpansion) -> tuple[int, int]:
    D = min(F.D, G.D)
    S = min(F.S, G.S)
    return D, S


def _singular_values(F: SiegelExpansion, S: int) -> list:
    return [F.raw((0, 0, c)) for c in range(S + 1)]


def multiply(F: SiegelExpansion, G: SiegelExpansion) -> SiegelExpansion:
    """Product of a scalar expansion with a scalar or vector expansion."""
    if F.field is not None or G.field is not None:
        raise ValueError("products are implemented for rational expansions")
    if F.j and G.j:
        raise ValueError("vector times vector products are not supported")
    if F.j:
        F, G = G, F
    # now F is scalar, G scalar or vector
    D, S = _out_bounds(F, G)
    plan = convolution_plan(D)
    fb = _box_values(F, plan)
    gb = _box_values(G, plan)
    table = {}
    if G.j == 0:
        for h, (i1, i2) in zip(plan.targets, plan.pairs):
            table[h] = sum(fb[x] * gb[y] for x, y in zip(i1, i2))
    else:
        g0 = [v[0] for v in gb]
        g1 = [v[1] for v in gb]
        g2 = [v[2] for v in gb]
        for h, (i1, i2) in zip(plan.targets, plan.pairs):
            fs = [fb[x] for x in i1]
            table[h] = (
                sum(s * g0[y] for s, y in zip(fs, i2)),
                sum(s * g1[y] for s, y in zip(fs, i2)),
                sum(s * g2[y] for s, y in zip(fs, i2)),
            )
    fs = _singular_values(F, S)
    gs = _singular_values(G, S)
    for c in range(S + 1):
        if G.j == 0:
            table[(0, 0, c)] = sum(fs[i] * gs[c - i] for i in range(c + 1))
        else:
            table[(0, 0, c)] = tuple(sum(fs[i] * gs[c - i][t] for i in range(c + 1)) for t in range(3))
    return SiegelExpansion(F.k + G.k, G.j, D, S, table, F.scale * G.scale).normalized()


def satoh_bracket(F: SiegelExpansion, G: SiegelExpansion) -> SiegelExpansion:
    """[F, G]_2 with C(h) = sum_{f+g=h} C_F(f) C_G(g) (P(f)/k - P(g)/k')."""
    if F.j or G.j:
        raise ValueError("the bracket takes scalar-valued expansions")
    if F.field is not None or G.field is not None:
        raise ValueError("brackets are implemented for rational expansions")
    k, kp = F.k, G.k
    D, S = _out_bounds(F, G)
    plan = convolution_plan(D)
    fb = _box_values(F, plan)
    gb = _box_values(G, plan)
    box = plan.box
    table = {}
    # k' P(f) - k P(h - f) = (k + k') f - k h
    for h, (i1, i2) in zip(plan.targets, plan.pairs):
        s = s0 = s1 = s2 = 0
        for x, y in zip(i1, i2):
            w = fb[x] * gb[y]
            if w:
                a1, b1, c1 = box[x]
                s += w
                s0 += w * a1
                s1 += w * b1
                s2 += w * c1
        table[h] = (
            (k + kp) * s0 - k * h[0] * s,
            (k + kp) * s1 - k * h[1] * s,
            (k + kp) * s2 - k * h[2] * s,
        )
    fs = _singular_values(F, S)
    gs = _singular_values(G, S)
    for c in range(S + 1):
        y2 = sum(fs[i] * gs[c - i] * (kp * i - k * (c - i)) for i in range(c + 1))
        table[(0, 0, c)] = (0, 0, y2)
    return SiegelExpansion(k + kp, 2, D, S, table, F.scale * G.scale / (k * kp)).normalized()


def unit_expansion(D: int, S: int) -> SiegelExpansion:
    table = {g: 0 for g in reduced_forms(D, S)}
    table[(0, 0, 0)] = 1
    return SiegelExpansion(0, 0, D, S, table)


def phi_operator(F: SiegelExpansion):
    """Singular part sum_c C([0,0,c]) q^c; the Y^2 component when j = 2."""
    from ..eform import QSeries

    vals = []
    for c in range(F.S + 1):
        v = F.coefficient_at((0, 0, c))
        vals.append(v if F.j == 0 else v[2])
    if F.field is not None:
        return vals
    return QSeries(F.k, vals)


def direct_bracket_at(F: SiegelExpansion, G: SiegelExpansion, h: BQF):
    """Bracket coefficient at an arbitrary index by brute-force convolution."""
    a, b, c = h
    k, kp = F.k, G.k
    out = [Fraction(0)] * 3
    for a1 in range(a + 1):
        for c1 in range(c + 1):
            r1 = isqrt(4 * a1 * c1)
            r2 = isqrt(4 * (a - a1) * (c - c1))
            for b1 in range(max(-r1, b - r2), min(r1, b + r2) + 1):
                f1 = (a1, b1, c1)
                f2 = (a - a1, b - b1, c - c1)
                w = F.coefficient_at(f1) * G.coefficient_at(f2)
                for t in range(3):
                    out[t] += w * (Fraction(f1[t], k) - Fraction(f2[t], kp))
    return tuple(out)


def direct_product_at(F: SiegelExpansion, G: SiegelExpansion, h: BQF):
    """Product coefficient at an arbitrary index by brute-force convolution."""
    if F.j:
        F, G = G, F
    a, b, c = h
    out = Fraction(0) if G.j == 0 else [Fraction(0)] * 3
    for a1 in range(a + 1):
        for c1 in range(c + 1):
            r1 = isqrt(4 * a1 * c1)
            r2 = isqrt(4 * (a - a1) * (c - c1))
            for b1 in range(max(-r1, b - r2), min(r1, b + r2) + 1):
                s = F.coefficient_at((a1, b1, c1))
                v = G.coefficient_at((a - a1, b - b1, c - c1))
                if G.j == 0:
                    out += s * v
                else:
                    for t in range(3):
                        out[t] += s * v[t]
    return out if G.j == 0 else tuple(out)


def iter_nonzero(F: SiegelExpansion) -> Iterable[tuple[BQF, object]]:
    z = _zero(F.j)
    for g in F.keys():
        v = F.table.get(g, z)
        if v != z:
            yield g, F._scaled(v)
