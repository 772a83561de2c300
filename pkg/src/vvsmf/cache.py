"""Plain-text persistence of rational expansions.

Layout::

    vvsmf-cache 1
    weight <k> <j>
    field <modulus or Q>
    bounds <D> <S>
    checksum <sha256 of the record lines>
    <a> <b> <c> <value> [<value> <value>]
    ...

Records follow the canonical key order (disc, a, b, then the singular
indices by c).  Values are num/den in lowest terms, so a read followed by a
write reproduces the file byte for byte.
"""

from __future__ import annotations

import contextlib
import fcntl
import hashlib
import os
import tempfile
from fractions import Fraction
from math import lcm

from .siegel.bqf import reduced_forms
from .siegel.expansion import SiegelExpansion

FORMAT_VERSION = 1


class CacheError(ValueError):
    pass


def _rat(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _records(F: SiegelExpansion) -> list[str]:
    lines = []
    for g in reduced_forms(F.D, F.S):
        v = F.coefficient_at(g)
        vals = (v,) if F.j == 0 else v
        lines.append(" ".join([*map(str, g), *map(_rat, vals)]))
    return lines


def _checksum(lines: list[str]) -> str:
    h = hashlib.sha256()
    for line in lines:
        h.update(line.encode())
        h.update(b"\n")
    return h.hexdigest()


def dumps(F: SiegelExpansion) -> str:
    if F.field is not None and F.field.degree > 1:
        raise CacheError("only rational expansions are cached")
    body = _records(F)
    head = [
        f"vvsmf-cache {FORMAT_VERSION}",
        f"weight {F.k} {F.j}",
        "field Q",
        f"bounds {F.D} {F.S}",
        f"checksum {_checksum(body)}",
    ]
    return "\n".join(head + body) + "\n"


def _header(lines: list[str]) -> dict:
    if len(lines) < 5 or lines[0] != f"vvsmf-cache {FORMAT_VERSION}":
        raise CacheError("not a cache file of a supported version")
    out = {}
    for line in lines[1:5]:
        key, _, rest = line.partition(" ")
        out[key] = rest
    return out


def loads(text: str) -> SiegelExpansion:
    lines = text.splitlines()
    h = _header(lines)
    body = lines[5:]
    if _checksum(body) != h["checksum"]:
        raise CacheError("checksum mismatch")
    k, j = map(int, h["weight"].split())
    D, S = map(int, h["bounds"].split())
    values = {}
    for line in body:
        parts = line.split()
        g = tuple(int(x) for x in parts[:3])
        vals = [Fraction(x) for x in parts[3:]]
        values[g] = vals[0] if j == 0 else tuple(vals)
    den = 1
    for v in values.values():
        for x in (v,) if j == 0 else v:
            den = lcm(den, x.denominator)
    if j == 0:
        table = {g: int(v * den) for g, v in values.items() if v}
    else:
        table = {g: tuple(int(x * den) for x in v) for g, v in values.items() if any(v)}
    return SiegelExpansion(k, j, D, S, table, Fraction(1, den)).normalized()


def header_of(path: str) -> dict:
    with open(path) as fh:
        lines = [fh.readline().rstrip("\n") for _ in range(5)]
    return _header(lines)


def read(path: str) -> SiegelExpansion:
    with open(path) as fh:
        return loads(fh.read())


def verify_file(path: str) -> bool:
    try:
        read(path)
    except (OSError, CacheError, ValueError, KeyError):
        return False
    return True


@contextlib.contextmanager
def locked(directory: str):
    """Advisory exclusive lock on the cache directory."""
    os.makedirs(directory, exist_ok=True)
    with open(os.path.join(directory, ".lock"), "w") as fh:
        fcntl.flock(fh, fcntl.LOCK_EX)
        try:
            yield
        finally:
            fcntl.flock(fh, fcntl.LOCK_UN)


def write_text(path: str, text: str) -> None:
    """Atomic replace of path by text."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        with contextlib.suppress(OSError):
            os.unlink(tmp)
        raise


def write(path: str, F: SiegelExpansion) -> None:
    write_text(path, dumps(F))
