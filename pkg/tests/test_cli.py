import json
import os
from fractions import Fraction
from math import gcd

import pytest

from vvsmf import cache
from vvsmf.cli import EXIT_ERROR, EXIT_FAIL, EXIT_OK, main
from vvsmf.config import CACHE_ENV, RunConfig, default_cache_dir, load_config
from vvsmf.siegel.expansion import multiply, satoh_bracket
from vvsmf.siegel.igusa import igusa_generators


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# -- cache files ----------------------------------------------------------------------


def test_cache_roundtrip_bytes(tmp_path, small_ring):
    g = small_ring.gens
    forms = [g["E4"], g["X10"], multiply(g["E4"], g["X10"]).scaled(Fraction(3, 7)), satoh_bracket(g["E4"], g["X12"])]
    for n, F in enumerate(forms):
        a = tmp_path / f"a{n}.txt"
        b = tmp_path / f"b{n}.txt"
        cache.write(str(a), F)
        G = cache.read(str(a))
        assert G == F
        cache.write(str(b), G)
        assert a.read_bytes() == b.read_bytes()
        assert cache.verify_file(str(a))


def test_cache_records_in_lowest_terms(small_ring):
    F = small_ring.gens["E4"].scaled(Fraction(2, 6))
    body = cache.dumps(F).splitlines()
    assert body[0] == "vvsmf-cache 1"
    assert "0 0 0 1/3" in body
    for line in body[5:]:
        v = line.split()[3]
        if "/" in v:
            num, den = map(int, v.split("/"))
            assert gcd(num, den) == 1 and den > 1


def test_cache_detects_corruption(tmp_path, small_ring):
    path = tmp_path / "x.txt"
    cache.write(str(path), small_ring.gens["X10"])
    lines = path.read_text().splitlines()
    lines[5] = lines[5].rsplit(" ", 1)[0] + " 2"
    path.write_text("\n".join(lines) + "\n")
    assert not cache.verify_file(str(path))
    with pytest.raises(cache.CacheError):
        cache.read(str(path))


# -- configuration ----------------------------------------------------------------------


def test_config_defaults_and_file(tmp_path):
    cfg = RunConfig()
    assert (cfg.disc_bound, cfg.singular_bound, cfg.precision_bits) == (3000, 750, 256)
    path = tmp_path / "run.cfg"
    path.write_text("# desk run\ndisc_bound = 100\nsingular-bound = 25\nprimes = 2, 3\ncache_dir = /tmp/x\n")
    cfg = load_config(str(path), precision_bits=128, disc_bound=None)
    assert (cfg.disc_bound, cfg.singular_bound, cfg.primes, cfg.precision_bits) == (100, 25, (2, 3), 128)
    assert cfg.cache_dir == "/tmp/x"


def test_config_errors(tmp_path):
    path = tmp_path / "bad.cfg"
    path.write_text("colour = blue\n")
    with pytest.raises(ValueError):
        load_config(str(path))
    with pytest.raises(ValueError):
        RunConfig(disc_bound=0)


def test_cache_dir_env(monkeypatch, tmp_path):
    monkeypatch.setenv(CACHE_ENV, str(tmp_path))
    assert default_cache_dir() == str(tmp_path)
    assert RunConfig().cache_dir == str(tmp_path)


# -- commands -------------------------------------------------------------------------


def test_igusa_tiny_and_idempotent(tmp_path, capsys):
    base = ["--cache-dir", str(tmp_path), "--disc-bound", "20", "--singular-bound", "5"]
    code, out, _ = run(capsys, *base, "igusa")
    assert code == EXIT_OK
    files = sorted(os.listdir(tmp_path))
    assert [f for f in files if f.startswith("igusa")] == [
        "igusa-E4-D20-S5.txt",
        "igusa-E6-D20-S5.txt",
        "igusa-X10-D20-S5.txt",
        "igusa-X12-D20-S5.txt",
    ]
    text = (tmp_path / "igusa-X10-D20-S5.txt").read_text().splitlines()
    assert "1 1 1 1" in text
    before = {f: (tmp_path / f).read_bytes() for f in files}
    code, out, _ = run(capsys, *base, "igusa")
    assert code == EXIT_OK and out.startswith("cache up to date")
    assert {f: (tmp_path / f).read_bytes() for f in files} == before
    # downstream use of the tiny cache
    gens = [cache.read(str(tmp_path / f"igusa-{n}-D20-S5.txt")) for n in ("E4", "E6", "X10", "X12")]
    assert gens == list(igusa_generators(20, 5))


def test_basis_and_eigen(tmp_path, capsys):
    code, out, _ = run(capsys, "--cache-dir", str(tmp_path), "basis", "16")
    assert code == EXIT_OK and "3 Satoh elements, cuspidal dimension 2" in out
    code, out, _ = run(capsys, "--cache-dir", str(tmp_path), "eigen", "20")
    assert code == EXIT_OK
    assert "dim S_{20,2} = 3" in out
    assert (tmp_path / "eigen-k20-D324.txt").exists()


def test_eigenvalues_and_rp(tmp_path, capsys):
    code, out, _ = run(capsys, "--cache-dir", str(tmp_path), "eigenvalues", "14", "--primes", "2")
    assert code == EXIT_OK and "lambda_2" in out
    code, out, _ = run(capsys, "--cache-dir", str(tmp_path), "check", "rp", "14", "--primes", "2,3")
    assert code == EXIT_OK and out.count("PASS") == 2


def test_verify_exit_codes(tmp_path, capsys):
    d = ["--cache-dir", str(tmp_path)]
    code, out, _ = run(capsys, *d, "verify", "harder", "32")
    assert code == EXIT_OK and "211" in out and "PASS" in out
    code, out, _ = run(capsys, *d, "verify", "harder", "24")
    assert code == EXIT_OK and "VACUOUS" in out
    code, out, _ = run(capsys, *d, "verify", "harder", "32", "--ell", "13", "--p-delta", "2,3")
    assert code == EXIT_FAIL and "FAIL" in out
    code, out, _ = run(capsys, *d, "verify", "sym2", "16", "--format", "json", "--output", str(tmp_path / "r.json"))
    assert code == EXIT_OK
    (doc,) = json.loads((tmp_path / "r.json").read_text())
    assert doc["ell"] == 373 and doc["verdict"] == "PASS"


def test_computational_error_exit_code(tmp_path, capsys):
    code, _, err = run(capsys, "--cache-dir", str(tmp_path), "--basis-disc-bound", "8", "eigen", "20")
    assert code == EXIT_ERROR and err.startswith("error:")
    code, _, err = run(capsys, "--cache-dir", str(tmp_path), "verify", "harder", "30")
    assert code == EXIT_ERROR


def test_lvalue(tmp_path, capsys):
    code, out, _ = run(capsys, "--cache-dir", str(tmp_path), "lvalue", "12")
    assert code == EXIT_OK
    rows = out.splitlines()[1:]
    # t = 1, 3, ..., 11 and t = 2, 4, ..., 10
    assert len(rows) == 11
    assert {row.split("\t")[4] for row in rows} <= {"", "691"}
    assert all(len(row.split("\t")[3].split("x")) == 2 for row in rows)
    code, out, _ = run(capsys, "--cache-dir", str(tmp_path), "lvalue", "32", "3", "--format", "json")
    doc = json.loads(out)
    (row,) = doc["rows"]
    assert row["ratios"][0].startswith("0.045375")
    assert row["primes"] == [] or all(p > 32 for p in row["primes"])
