"""Elementary number theory: primes, divisor sums, Bernoulli and Cohen numbers."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, isqrt


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for p in small:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i, v in enumerate(sieve) if v]


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorisation; meant for the small integers met here."""
    n = abs(n)
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def sigma(n: int, k: int) -> int:
    return sum(d**k for d in divisors(n))


def moebius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, e) if q = p^e with p prime and e >= 1, else None."""
    f = factorize(q)
    if len(f) != 1:
        return None
    (p, e), = f.items()
    return p, e


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n with B_1 = -1/2."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(-1, 2)
    if n % 2:
        return Fraction(0)
    # sum_{j=0}^{n} C(n+1, j) B_j = 0
    s = sum(comb(n + 1, j) * bernoulli(j) for j in range(n))
    return -s / (n + 1)


def bernoulli_poly(n: int, x: Fraction) -> Fraction:
    return sum(comb(n, k) * bernoulli(k) * x ** (n - k) for k in range(n + 1))


def zeta_negative(r: int) -> Fraction:
    """zeta(1 - 2r) = -B_{2r} / (2r) for r >= 1."""
    return -bernoulli(2 * r) / (2 * r)


def kronecker(d: int, n: int) -> int:
    """Kronecker symbol (d / n) for n >= 1."""
    if n <= 0:
        raise ValueError("n must be positive")
    result = 1
    while n % 2 == 0:
        n //= 2
        if d % 2 == 0:
            return 0
        if d % 8 in (3, 5):
            result = -result
    # Jacobi symbol for odd n
    a = d % n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def fundamental_decomposition(disc: int) -> tuple[int, int]:
    """Write a discriminant disc (= 0, 1 mod 4, nonzero) as D f^2 with D fundamental."""
    if disc == 0 or disc % 4 not in (0, 1):
        raise ValueError(f"{disc} is not a nonzero discriminant")
    f = 1
    for p, e in factorize(disc).items():
        f *= p ** (e // 2)
    D = disc // (f * f)
    if D % 4 in (2, 3):
        D *= 4
        f //= 2
    return D, f


@lru_cache(maxsize=None)
def generalized_bernoulli(n: int, D: int) -> Fraction:
    """B_{n, chi_D} for the quadratic character of fundamental discriminant D."""
    if D == 1:
        b = bernoulli(n)
        # chi trivial of conductor 1 uses B_1 = +1/2 convention
        return -b if n == 1 else b
    m = abs(D)
    # B_{n,chi} = m^{-1} sum_k C(n,k) B_k m^k sum_a chi(a) a^{n-k}
    power_sums = [0] * (n + 1)
    for a in range(1, m + 1):
        chi = kronecker(D, a)
        if chi:
            ap = chi
            for j in range(n + 1):
                power_sums[j] += ap
                ap *= a
    total = sum(comb(n, k) * bernoulli(k) * m**k * power_sums[n - k] for k in range(n + 1))
    return Fraction(total) / m


@lru_cache(maxsize=None)
def cohen_H(r: int, N: int) -> Fraction:
    """Cohen's number H(r, N); H(1, N) is the Hurwitz class number."""
    if r < 1 or N < 0:
        raise ValueError("need r >= 1 and N >= 0")
    if N == 0:
        return zeta_negative(r)
    disc = (-1) ** r * N
    if disc % 4 in (2, 3):
        return Fraction(0)
    D, f = fundamental_decomposition(disc)
    L = -generalized_bernoulli(r, D) / r
    s = Fraction(0)
    for d in divisors(f):
        mu = moebius(d)
        if mu:
            s += mu * kronecker(D, d) * d ** (r - 1) * sigma(f // d, 2 * r - 1)
    return L * s
