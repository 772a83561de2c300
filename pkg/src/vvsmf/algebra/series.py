"""Fast truncated products of integer power series (Kronecker substitution)."""

from __future__ import annotations

import gmpy2
import numpy as np


def _signed_pack(values, bits: int):
    pos = gmpy2.pack([v if v > 0 else 0 for v in values], bits)
    neg = gmpy2.pack([-v if v < 0 else 0 for v in values], bits)
    return pos - neg


def mul_int(a: list[int], b: list[int], n: int) -> list[int]:
    """First n coefficients of the product of two integer series."""
    a = a[:n]
    b = b[:n]
    if not a or not b:
        return [0] * n
    ma = max(map(abs, a))
    mb = max(map(abs, b))
    if ma == 0 or mb == 0:
        return [0] * n
    if min(len(a), len(b)) < 24:
        # schoolbook is faster for short factors
        out = [0] * n
        for i, x in enumerate(a):
            if x:
                for j in range(min(len(b), n - i)):
                    out[i + j] += x * b[j]
        return out
    bits = ma.bit_length() + mb.bit_length() + min(len(a), len(b)).bit_length() + 2
    w = _signed_pack(a, bits) * _signed_pack(b, bits)
    # shifting every slot by half turns the signed digits into unsigned ones
    half = 1 << (bits - 1)
    w = gmpy2.f_mod_2exp(w, bits * n) + gmpy2.pack([half] * n, bits)
    w = gmpy2.f_mod_2exp(w, bits * n)
    digits = gmpy2.unpack(w, bits)
    out = [int(d) - half for d in digits[:n]]
    out.extend([-half] * (n - len(out)))
    return out


def mul_mod(a: np.ndarray, b: np.ndarray, n: int, ell: int) -> np.ndarray:
    """First n coefficients of a*b modulo ell; inputs are int64 arrays reduced mod ell."""
    a = np.asarray(a[:n], dtype=np.uint64)
    b = np.asarray(b[:n], dtype=np.uint64)
    m = min(len(a), len(b))
    if (ell - 1) ** 2 * m >= 1 << 64:
        raise OverflowError("prime too large for 64-bit Kronecker slots")
    pa = gmpy2.mpz(int.from_bytes(a.astype("<u8").tobytes(), "little"))
    pb = gmpy2.mpz(int.from_bytes(b.astype("<u8").tobytes(), "little"))
    w = int(pa * pb)
    nbytes = 8 * n
    raw = (w & ((1 << (8 * nbytes)) - 1)).to_bytes(nbytes, "little")
    out = np.frombuffer(raw, dtype="<u8") % np.uint64(ell)
    return out.astype(np.int64)
