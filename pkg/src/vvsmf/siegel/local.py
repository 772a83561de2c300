"""Coefficients at a few large indices without a global expansion.

Every decomposition h = f1 + f2 of an index h = [a, b, c] into semidefinite
forms has f_i in the box 0 <= a_i <= a, 0 <= c_i <= c, |b_i| <= 2 sqrt(ac).
On such a box products and brackets are exact, and a box of modest size can
be multiplied in one step by packing it into a single integer.  This is how
coefficients of basis elements at indices such as p^2 [1, 1, 1] are obtained
when the stored bound D is far smaller than their discriminant.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import isqrt

from ..algebra.series import mul_int
from .bqf import BQF
from .igusa import igusa_jacobi_forms, lift_coefficient, lift_data
from .satoh import GENERATORS

# packed slots beyond this are refused (memory grows linearly with it)
MAX_BOX_SLOTS = 3_000_000


class Box:
    """Index range 0 <= a <= A, |b| <= B, 0 <= c <= C with B = floor(2 sqrt(AC))."""

    def __init__(self, A: int, C: int):
        self.A, self.C = A, C
        self.B = isqrt(4 * A * C)
        self.sb = 2 * self.C + 1
        self.sa = (4 * self.B + 1) * self.sb
        self.size = (A + 1) * self.sa
        if self.size > MAX_BOX_SLOTS:
            raise MemoryError(f"box for a<={A}, c<={C} needs {self.size} slots (cap {MAX_BOX_SLOTS})")

    def index(self, f: BQF) -> int:
        a, b, c = f
        return a * self.sa + (b + self.B) * self.sb + c

    def points(self):
        """Semidefinite indices of the box with their flat positions."""
        for a in range(self.A + 1):
            for c in range(self.C + 1):
                r = isqrt(4 * a * c)
                for b in range(-r, r + 1):
                    yield (a, b, c), self.index((a, b, c))

    def product(self, x: list[int], y: list[int]) -> list[int]:
        """Exact product on the box of two packed arrays."""
        p = mul_int(x, y, self.size)
        out = [0] * self.size
        shift = self.B * self.sb
        width = (2 * self.B + 1) * self.sb
        for a in range(self.A + 1):
            base = a * self.sa
            block = p[base + shift : base + shift + width]
            for row in range(2 * self.B + 1):
                lo = row * self.sb
                out[base + lo : base + lo + self.C + 1] = block[lo : lo + self.C + 1]
        return out


class BoxForm:
    """Numerators on a box with a common rational scale; j = 2 keeps three arrays."""

    __slots__ = ("box", "k", "j", "data", "scale")

    def __init__(self, box: Box, k: int, j: int, data, scale):
        self.box, self.k, self.j, self.data, self.scale = box, k, j, data, Fraction(scale)

    def value(self, f: BQF):
        i = self.box.index(f)
        if self.j == 0:
            return self.data[i] * self.scale
        return tuple(d[i] * self.scale for d in self.data)


def box_multiply(F: BoxForm, G: BoxForm) -> BoxForm:
    if F.j:
        F, G = G, F
    if F.j:
        raise ValueError("vector times vector products are not supported")
    box = F.box
    if G.j == 0:
        data = box.product(F.data, G.data)
    else:
        data = [box.product(F.data, g) for g in G.data]
    return BoxForm(box, F.k + G.k, G.j, data, F.scale * G.scale)


def box_bracket(F: BoxForm, G: BoxForm) -> BoxForm:
    """The same bracket as the global one: sum C_F(f) C_G(g) (f/k - g/k')."""
    box = F.box
    k, kp = F.k, G.k
    weighted = [[0] * box.size for _ in range(3)]
    coords = [[0] * box.size for _ in range(3)]
    for f, i in box.points():
        v = F.data[i]
        for t in range(3):
            coords[t][i] = f[t]
            if v:
                weighted[t][i] = v * f[t]
    s = box.product(F.data, G.data)
    data = []
    for t in range(3):
        st = box.product(weighted[t], G.data)
        data.append([(k + kp) * x - k * h * y for x, h, y in zip(st, coords[t], s)])
    return BoxForm(box, k + kp, 2, data, F.scale * G.scale / (k * kp))


@lru_cache(maxsize=2)
def _jacobi(n_max: int):
    return igusa_jacobi_forms(n_max)


class LocalIgusaRing:
    """Igusa generators, monomials and brackets on one box."""

    def __init__(self, box: Box):
        self.box = box
        n_max = max(box.A * box.C, 1)
        self.gens = {}
        for name, (phi, k, rescale) in _jacobi(n_max).items():
            ints, const, den = lift_data(phi, k, 4 * n_max)
            data = [0] * box.size
            for f, i in box.points():
                data[i] = lift_coefficient(ints, const, k, f)
            scale = Fraction(1, const) if rescale else Fraction(1, den)
            self.gens[name] = BoxForm(box, k, 0, data, scale)
        self._mono = {}
        self._brackets = {}

    def monomial(self, e: tuple[int, ...]) -> BoxForm | None:
        if not any(e):
            return None
        if e not in self._mono:
            i = max(i for i, x in enumerate(e) if x)
            rest = list(e)
            rest[i] -= 1
            rest = tuple(rest)
            g = self.gens[GENERATORS[i]]
            sub = self.monomial(rest)
            self._mono[e] = g if sub is None else box_multiply(sub, g)
        return self._mono[e]

    def bracket(self, pair: tuple[str, str]) -> BoxForm:
        if pair not in self._brackets:
            self._brackets[pair] = box_bracket(self.gens[pair[0]], self.gens[pair[1]])
        return self._brackets[pair]

    def element(self, pair: tuple[str, str], e: tuple[int, ...]) -> BoxForm:
        m = self.monomial(e)
        br = self.bracket(pair)
        return br if m is None else box_multiply(m, br)


def satoh_values_at(recipes, targets: list[BQF]) -> list[dict[BQF, tuple]]:
    """Coefficients of the described basis elements at the given indices."""
    if not targets:
        return [{} for _ in recipes]
    A = max(f[0] for f in targets)
    C = max(f[2] for f in targets)
    ring = LocalIgusaRing(Box(A, C))
    out = []
    for pair, e in recipes:
        F = ring.element(pair, e)
        out.append({f: F.value(f) for f in targets})
    return out


