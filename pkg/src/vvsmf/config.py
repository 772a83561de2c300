"""Tunable limits and run configuration.

The only environment override is VVSMF_CACHE_DIR; everything else comes from
a key=value file or from command-line flags.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, fields, replace

# largest number of q-coefficients the modular ordinarity test may allocate
ORDINARY_TERM_CAP = 20_000_000

CACHE_ENV = "VVSMF_CACHE_DIR"


def default_cache_dir() -> str:
    return os.environ.get(CACHE_ENV) or os.path.join(os.path.expanduser("~"), ".cache", "vvsmf")


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.replace(",", " ").split())


@dataclass(frozen=True)
class RunConfig:
    disc_bound: int = 3000
    singular_bound: int = 750
    # bound used for Satoh bases and eigen systems (weights up to 20 at p^delta <= 9)
    basis_disc_bound: int = 324
    precision_bits: int = 256
    threads: int = 1
    cache_dir: str = field(default_factory=default_cache_dir)
    p_delta_list: tuple[int, ...] = (2, 3, 4, 5, 7, 8, 9)
    primes: tuple[int, ...] = (2, 3, 5)

    def __post_init__(self):
        for name in ("disc_bound", "singular_bound", "basis_disc_bound", "precision_bits", "threads"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    @property
    def basis_singular_bound(self) -> int:
        return (self.basis_disc_bound + 3) // 4

    def updated(self, **changes) -> "RunConfig":
        return replace(self, **{k: v for k, v in changes.items() if v is not None})


def load_config(path: str | None = None, **overrides) -> RunConfig:
    """Read `key = value` lines (# comments allowed), then apply overrides."""
    values: dict = {}
    if path:
        kinds = {f.name: f.type for f in fields(RunConfig)}
        with open(path) as fh:
            for n, line in enumerate(fh, 1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ValueError(f"{path}:{n}: expected key = value")
                key, value = (s.strip() for s in line.split("=", 1))
                key = key.replace("-", "_")
                if key not in kinds:
                    raise ValueError(f"{path}:{n}: unknown key {key!r}")
                if key == "cache_dir":
                    values[key] = value
                elif key in ("p_delta_list", "primes"):
                    values[key] = _int_list(value)
                else:
                    values[key] = int(value)
    return RunConfig(**values).updated(**overrides)
