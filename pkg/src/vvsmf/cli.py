"""Command-line interface.

Exit status: 0 on success or a passing check, 1 on a computational failure
(truncation, precision, resource limits, I/O), 2 when a congruence or a
Ramanujan-Petersson check fails.
"""

from __future__ import annotations

import argparse
import glob
import json
import os
import sys
from fractions import Fraction

import mpmath
import sympy

from . import cache
from .algebra.factor import factor_rational
from .algebra.lattice import NoRelationFound
from .algebra.linalg import charpoly
from .config import RunConfig, load_config
from .eform import elliptic_eigenforms
from .hecke import eigensystems, eigenvalue, local_data, rp_check, t2_matrix
from .lfunc import critical_ratios, harder_congruence_primes, norm_from_minpoly, ratio_minpoly
from .siegel.expansion import TruncationError
from .siegel.igusa import igusa_generators
from .siegel.satoh import GENERATORS, IgusaRing, satoh_basis
from .verify import (
    Workspace,
    emit_report,
    harder_point,
    sym2_primes,
    vacuous_report,
    verify_harder,
    verify_sym2,
)

EXIT_OK, EXIT_ERROR, EXIT_FAIL = 0, 1, 2


def _out(text: str = "") -> None:
    print(text)


# -- cache helpers -------------------------------------------------------------

def igusa_path(cfg: RunConfig, name: str) -> str:
    return os.path.join(cfg.cache_dir, f"igusa-{name}-D{cfg.disc_bound}-S{cfg.singular_bound}.txt")


def cmd_igusa(cfg: RunConfig) -> int:
    paths = {name: igusa_path(cfg, name) for name in GENERATORS}
    with cache.locked(cfg.cache_dir):
        if all(os.path.exists(p) and cache.verify_file(p) for p in paths.values()):
            _out("cache up to date")
            for p in paths.values():
                _out(p)
            return EXIT_OK
        gens = igusa_generators(cfg.disc_bound, cfg.singular_bound)
        for (name, path), F in zip(paths.items(), gens):
            cache.write(path, F)
            _out(path)
    return EXIT_OK


def _cached_generators(cfg: RunConfig, D: int, S: int):
    """Generators at (D, S) from any cache file with larger bounds, else None."""
    best = None
    for path in glob.glob(os.path.join(cfg.cache_dir, "igusa-E4-D*-S*.txt")):
        try:
            h = cache.header_of(path)
        except (OSError, cache.CacheError):
            continue
        d, s = map(int, h["bounds"].split())
        if d >= D and s >= S and (best is None or d < best[0]):
            best = (d, s)
    if best is None:
        return None
    out = []
    for name in GENERATORS:
        path = os.path.join(cfg.cache_dir, f"igusa-{name}-D{best[0]}-S{best[1]}.txt")
        out.append(cache.read(path).truncate(D, S))
    return out


def workspace(cfg: RunConfig) -> Workspace:
    ws = Workspace(cfg.basis_disc_bound, cfg.basis_singular_bound)
    gens = _cached_generators(cfg, ws.D, ws.S)
    if gens is not None:
        ws._ring = IgusaRing(ws.D, ws.S, gens)
    return ws


# -- basis and eigenforms ----------------------------------------------------------

def cmd_basis(k: int, cfg: RunConfig) -> int:
    ws = workspace(cfg)
    basis = satoh_basis(k, ws.D, ws.S, ws.ring)
    _out(f"M_{{{k},2}}: {len(basis)} Satoh elements, cuspidal dimension {basis.cusp_dimension()}")
    for i, lab in enumerate(basis.labels):
        _out(f"  {i}: {lab}")
    return EXIT_OK


def _eigen_text(k, factors, systems) -> str:
    lines = [f"weight {k} 2", "charpoly " + " * ".join(f"({g})" + (f"^{e}" if e > 1 else "") for g, e in factors)]
    for n, E in enumerate(systems):
        lines.append(f"orbit {n} degree {E.degree} cuspidal {int(E.cuspidal)} field {E.field.modulus}")
        for lab, c in zip(E.labels, E.coordinates):
            lines.append(f"  {lab} = {' '.join(_rat(x) for x in c.coefficient_list())}")
    return "\n".join(lines) + "\n"


def _rat(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def cmd_eigen(k: int, cfg: RunConfig) -> int:
    ws = workspace(cfg)
    basis = satoh_basis(k, ws.D, ws.S, ws.ring)
    factors = list(factor_rational(charpoly(t2_matrix(basis))))
    systems = eigensystems(basis)
    _out(f"T(2) on M_{{{k},2}}: " + " * ".join(f"({g})" for g, _ in factors))
    for n, E in enumerate(systems):
        kind = "cuspidal" if E.cuspidal else "non-cuspidal"
        _out(f"orbit {n}: degree {E.degree}, {kind}, lambda_2 root of {E.field.modulus}")
        for lab, c in zip(E.labels, E.coordinates):
            if c:
                _out(f"    {lab}: {c}")
    _out(f"dim S_{{{k},2}} = {sum(E.degree for E in systems if E.cuspidal)}")
    path = os.path.join(cfg.cache_dir, f"eigen-k{k}-D{ws.D}.txt")
    with cache.locked(cfg.cache_dir):
        cache.write_text(path, _eigen_text(k, factors, systems))
    _out(path)
    return EXIT_OK


def cmd_eigenvalues(k: int, primes, deltas, cfg: RunConfig) -> int:
    ws = workspace(cfg)
    for n, E in enumerate(ws.siegel(k)):
        kind = "cuspidal" if E.cuspidal else "non-cuspidal"
        _out(f"orbit {n} ({kind}, field {E.field.modulus}):")
        for p in primes:
            for d in deltas:
                _out(f"  lambda_{p ** d} = {eigenvalue(E, p, d)}")
    return EXIT_OK


def cmd_check_rp(k: int, primes, cfg: RunConfig) -> int:
    ws = workspace(cfg)
    ok = True
    for n, E in enumerate(ws.cusp_siegel(k)):
        for p in primes:
            passed = rp_check(local_data(E, p), k, 2)
            ok &= passed
            _out(f"orbit {n} p={p}: {'PASS' if passed else 'FAIL'}")
    return EXIT_OK if ok else EXIT_FAIL


# -- congruences ------------------------------------------------------------------

def cmd_verify(kind: str, r: int, ells, p_delta_list, fmt: str, output: str | None, cfg: RunConfig) -> int:
    ws = workspace(cfg)
    if kind == "harder":
        if not ells:
            primes = harder_congruence_primes(r, harder_point(r), prec=cfg.precision_bits)
            ells = [ell for ell, cp in primes.items() if cp.ordinary is not False]
        if not ells:
            reports = [vacuous_report(kind, r, harder_point(r), "no large ordinary prime divides the critical value")]
        else:
            reports = [verify_harder(r, p_delta_list, ell, ws) for ell in ells]
    else:
        ells = ells or sym2_primes(r)
        if not ells:
            reports = [vacuous_report(kind, r, 2 * r - 4, "no prime listed for this weight")]
        else:
            reports = verify_sym2(r, p_delta_list, ells, ws)
    if fmt == "json":
        text = "[\n" + ",\n".join(emit_report(rep, "json") for rep in reports) + "\n]"
    else:
        text = "\n\n".join(emit_report(rep) for rep in reports)
    if output:
        cache.write_text(output, text + "\n")
    _out(text)
    return EXIT_OK if all(rep.passed for rep in reports) else EXIT_FAIL


def _minpolys(f, parity, t, prec, max_prec):
    """Ratios and minimal polynomials, doubling the precision on failure."""
    while True:
        ratios = critical_ratios(f, parity, prec)
        ts = sorted(ratios) if t is None else [t]
        try:
            return ratios, {s: ratio_minpoly(ratios[s], f.field.degree, prec) for s in ts}
        except NoRelationFound as exc:
            if 2 * prec > max_prec:
                raise NoRelationFound(f"{exc}; retry with --max-prec {2 * max_prec}") from exc
            prec *= 2


def cmd_lvalue(r: int, t: int | None, fmt: str, max_prec: int, cfg: RunConfig) -> int:
    forms = elliptic_eigenforms(r)
    rows = []
    parities = ["odd", "even"] if t is None else ["odd" if t % 2 else "even"]
    for n, f in enumerate(forms):
        for parity in parities:
            ratios, polys = _minpolys(f, parity, t, cfg.precision_bits, max(max_prec, cfg.precision_bits))
            for s, mp in polys.items():
                norm = norm_from_minpoly(mp, f.field.degree)
                num = abs(norm.numerator)
                large = sorted(p for p in sympy.factorint(num) if p > r) if num else []
                rows.append(
                    {
                        "form": n,
                        "t": s,
                        "ratios": [mpmath.nstr(v, 25) for v in ratios[s]],
                        "minpoly": str(mp),
                        "primes": large,
                    }
                )
    if fmt == "json":
        _out(json.dumps({"r": r, "rows": rows}, indent=2))
    else:
        _out("form\tt\tratios\tminpoly\tprimes")
        for row in rows:
            _out(f"{row['form']}\t{row['t']}\t{' '.join(row['ratios'])}\t{row['minpoly']}\t{','.join(map(str, row['primes']))}")
    return EXIT_OK


# -- argument parsing ----------------------------------------------------------------

def _ints(text: str) -> list[int]:
    return [int(x) for x in text.replace(",", " ").split()]


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="vvsmf", description="Vector-valued Siegel modular forms of weight (k, 2).")
    ap.add_argument("--config", help="key = value configuration file")
    ap.add_argument("--disc-bound", type=int)
    ap.add_argument("--singular-bound", type=int)
    ap.add_argument("--basis-disc-bound", type=int)
    ap.add_argument("--prec", type=int, dest="precision_bits")
    ap.add_argument("--threads", type=int)
    ap.add_argument("--cache-dir")
    sub = ap.add_subparsers(dest="command", required=True)

    sub.add_parser("igusa", help="compute and cache the Igusa generators")
    p = sub.add_parser("basis", help="Satoh basis of M_{k,2}")
    p.add_argument("k", type=int)
    p = sub.add_parser("eigen", help="Hecke eigenforms of M_{k,2}")
    p.add_argument("k", type=int)
    p = sub.add_parser("eigenvalues", help="Hecke eigenvalues lambda_{p^delta}")
    p.add_argument("k", type=int)
    p.add_argument("--primes", type=_ints, default=None, help="e.g. 2,3,5")
    p.add_argument("--delta", type=_ints, default=[1], help="exponents, e.g. 1,2")
    p = sub.add_parser("verify", help="check a congruence")
    p.add_argument("kind", choices=["harder", "sym2"])
    p.add_argument("r", type=int)
    p.add_argument("--ell", type=_ints, default=None)
    p.add_argument("--p-delta", type=_ints, default=None)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--output")
    p = sub.add_parser("lvalue", help="critical value ratios and their minimal polynomials")
    p.add_argument("r", type=int)
    p.add_argument("t", type=int, nargs="?")
    p.add_argument("--max-prec", type=int, default=4096, help="precision ceiling in bits")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p = sub.add_parser("check", help="run a check")
    p.add_argument("what", choices=["rp"])
    p.add_argument("k", type=int)
    p.add_argument("--primes", type=_ints, default=None)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(
            args.config,
            disc_bound=args.disc_bound,
            singular_bound=args.singular_bound,
            basis_disc_bound=args.basis_disc_bound,
            precision_bits=args.precision_bits,
            threads=args.threads,
            cache_dir=args.cache_dir,
        )
        if args.command == "igusa":
            return cmd_igusa(cfg)
        if args.command == "basis":
            return cmd_basis(args.k, cfg)
        if args.command == "eigen":
            return cmd_eigen(args.k, cfg)
        if args.command == "eigenvalues":
            return cmd_eigenvalues(args.k, args.primes or list(cfg.primes), args.delta, cfg)
        if args.command == "verify":
            return cmd_verify(args.kind, args.r, args.ell, args.p_delta or list(cfg.p_delta_list), args.format, args.output, cfg)
        if args.command == "lvalue":
            return cmd_lvalue(args.r, args.t, args.format, args.max_prec, cfg)
        if args.command == "check":
            return cmd_check_rp(args.k, args.primes or list(cfg.primes), cfg)
    except (TruncationError, NoRelationFound, ArithmeticError, MemoryError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
