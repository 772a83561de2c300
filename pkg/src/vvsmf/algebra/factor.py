"""Factorisation over Q and root finding over prime fields.

The splitter is deliberately modest.  After square-free decomposition each
factor is tested for irreducibility by distinct-degree factorisation modulo
a handful of primes; the intersection of the possible factor degrees often
certifies irreducibility outright.  Otherwise the complex roots are computed
to a precision covering the Mignotte bound and subsets of roots of an allowed
degree are multiplied out, rounded and confirmed by exact division.
"""

from __future__ import annotations

from itertools import combinations

import mpmath
import numpy as np

from .arith import primes_up_to
from .poly import RationalPolynomial


MAX_SUBSET_DEGREE = 16


class CannotSplitError(ArithmeticError):
    """Raised when a factor is reducible but could not be split."""

    def __init__(self, poly: RationalPolynomial, reason: str = ""):
        msg = f"cannot split {poly}"
        if reason:
            msg += f": {reason}"
        super().__init__(msg)
        self.poly = poly


# -- arithmetic in F_p[x], lists lowest degree first ------------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod_p(p: RationalPolynomial, ell: int) -> list[int]:
    """Reduce p modulo ell; raises ValueError if a denominator is divisible by ell."""
    out = []
    for c in p.coeffs:
        if c.denominator % ell == 0:
            raise ValueError(f"denominator of {c} is divisible by {ell}")
        out.append(c.numerator * pow(c.denominator, -1, ell) % ell)
    return _trim(out)


def _sub_p(a, b, ell):
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _trim([(x - y) % ell for x, y in zip(a, b)])


def _mul_p(a, b, ell):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([v % ell for v in out])


def _divmod_p(a, b, ell):
    a = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, ell)
    if len(a) - 1 < db:
        return [], _trim(a)
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv % ell
        q[i - db] = c
        if c:
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % ell
    return _trim(q), _trim(a[:db])


def _gcd_p(a, b, ell):
    while b:
        a, b = b, _divmod_p(a, b, ell)[1]
    if a:
        inv = pow(a[-1], -1, ell)
        a = [v * inv % ell for v in a]
    return a


def _powmod_p(base, e, mod, ell):
    result = [1]
    base = _divmod_p(base, mod, ell)[1]
    while e:
        if e & 1:
            result = _divmod_p(_mul_p(result, base, ell), mod, ell)[1]
        base = _divmod_p(_mul_p(base, base, ell), mod, ell)[1]
        e >>= 1
    return result


def distinct_degree_pattern(f: list[int], ell: int) -> list[int] | None:
    """Degrees of the irreducible factors of f mod ell.

    Returns None when f is not square-free modulo ell or drops degree.
    """
    f = _trim(list(f))
    n = len(f) - 1
    if n < 1:
        return []
    df = _trim([(i * c) % ell for i, c in enumerate(f)][1:])
    if len(_gcd_p(f, df, ell)) > 1:
        return None
    pattern: list[int] = []
    h = [0, 1]
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = _powmod_p(h, ell, f, ell)
        g = _gcd_p(f, _sub_p(h, [0, 1], ell), ell)
        if len(g) > 1:
            pattern += [d] * ((len(g) - 1) // d)
            f = _divmod_p(f, g, ell)[0]
            h = _divmod_p(h, f, ell)[1]
    if len(f) > 1:
        pattern.append(len(f) - 1)
    return pattern


def _subset_sums(parts: list[int]) -> set[int]:
    sums = {0}
    for p in parts:
        sums |= {s + p for s in sums}
    return sums


def possible_factor_degrees(p: RationalPolynomial, nprimes: int = 12) -> set[int]:
    """Degrees that a rational factor of the square-free p could have.

    The answer {0, deg p} certifies irreducibility.
    """
    ints = p.primitive_integer()
    n = len(ints) - 1
    allowed = set(range(n + 1))
    used = 0
    for ell in primes_up_to(2000)[1:]:
        if ints[-1] % ell == 0:
            continue
        pat = distinct_degree_pattern([v % ell for v in ints], ell)
        if pat is None:
            continue
        allowed &= _subset_sums(pat)
        used += 1
        if allowed == {0, n} or used >= nprimes:
            break
    return allowed


def is_irreducible(p: RationalPolynomial) -> bool:
    if p.degree < 1:
        return False
    if p.degree == 1:
        return True
    if p.gcd(p.derivative()).degree > 0:
        return False
    if possible_factor_degrees(p) == {0, p.degree}:
        return True
    return len(_split_squarefree(p.monic())) == 1


# -- splitting over Q --------------------------------------------------------

def _complex_roots(ints: list[int], dps: int):
    for attempt in range(4):
        with mpmath.workdps(dps):
            # convert inside the context: large integers must not round to 53 bits
            coeffs = [mpmath.mpf(c) for c in reversed(ints)]
            try:
                return mpmath.polyroots(coeffs, maxsteps=100 * (attempt + 1) + 10 * len(ints), extraprec=dps * (attempt + 1))
            except mpmath.libmp.NoConvergence:
                continue
    raise CannotSplitError(RationalPolynomial(ints), "root finder did not converge")


def _split_squarefree(f: RationalPolynomial) -> list[RationalPolynomial]:
    """Monic irreducible factors of a monic square-free f."""
    n = f.degree
    if n <= 1:
        return [f]
    allowed = possible_factor_degrees(f)
    if allowed == {0, n}:
        return [f]
    if n > MAX_SUBSET_DEGREE:
        raise CannotSplitError(f, f"degree {n} exceeds the subset search limit")
    ints = f.primitive_integer()
    lc = ints[-1]
    # Mignotte-style bound on the coefficients of lc * (a monic factor)
    norm = sum(abs(c) for c in ints)
    bound = abs(lc) * (2**n) * norm
    dps = len(str(bound)) + 30
    roots = _complex_roots(ints, dps)
    with mpmath.workdps(dps):
        cs = [mpmath.mpf(c) for c in reversed(ints)]
        ds = [mpmath.mpf(c * i) for i, c in reversed(list(enumerate(ints)))][:-1]
        # Newton step |f/f'| bounds the root error; a failed search below proves irreducibility only if small
        for z in roots:
            if abs(mpmath.polyval(cs, z)) > abs(mpmath.polyval(ds, z)) * mpmath.mpf(10) ** (-(dps // 2)):
                raise CannotSplitError(f, "complex roots are not accurate enough")
    degrees = sorted(d for d in allowed if 0 < d <= n // 2)
    with mpmath.workdps(dps):
        tol = mpmath.mpf(10) ** (-(dps // 3))
        for d in degrees:
            for subset in combinations(range(n), d):
                prod = [mpmath.mpc(lc)]
                for i in subset:
                    r = roots[i]
                    nxt = [mpmath.mpc(0)] * (len(prod) + 1)
                    for j, c in enumerate(prod):
                        nxt[j + 1] += c
                        nxt[j] -= c * r
                    prod = nxt
                if any(abs(c.imag) > tol for c in prod):
                    continue
                cand = [int(mpmath.nint(c.real)) for c in prod]
                if any(abs(c - x.real) > tol for c, x in zip(cand, prod)):
                    continue
                g = RationalPolynomial(cand)
                if g.degree != d:
                    continue
                q, r = f.divmod(g)
                if r.is_zero():
                    rest = _split_squarefree(q.monic())
                    return [g.monic()] + rest
    # exhaustive over the allowed degrees: f is irreducible
    return [f]


class Factorization(list):
    """List of (monic irreducible, multiplicity) with the leading constant in ``unit``."""

    def __init__(self, factors, unit):
        super().__init__(factors)
        self.unit = unit

    def expand(self) -> RationalPolynomial:
        out = RationalPolynomial([self.unit])
        for g, e in self:
            out = out * g**e
        return out


def factor_rational(p: RationalPolynomial) -> Factorization:
    """Factor p over Q into monic irreducibles, sorted by degree then coefficients."""
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    out = []
    for g, e in p.squarefree_decomposition():
        for h in _split_squarefree(g):
            out.append((h, e))
    out.sort(key=lambda t: (t[0].degree, t[0].coeffs, t[1]))
    return Factorization(out, p.leading())


# -- roots modulo a prime ----------------------------------------------------

def roots_mod_ell(p: RationalPolynomial, ell: int) -> set[int]:
    """All roots of p in F_ell by exhaustive vectorised evaluation."""
    cs = poly_mod_p(p, ell)
    if not cs:
        return set(range(ell))
    if ell >= 2**31:
        raise ValueError("prime too large for the vectorised scan")
    out = set()
    chunk = 1 << 20
    for start in range(0, ell, chunk):
        x = np.arange(start, min(ell, start + chunk), dtype=np.int64)
        acc = np.zeros_like(x)
        for c in reversed(cs):
            acc = (acc * x + c) % ell
        out.update(int(v) for v in x[acc == 0])
    return out
