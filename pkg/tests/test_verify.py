import json
import random

import pytest

from vvsmf.eform import mu_elliptic
from vvsmf.hecke import eigenvalue, local_data, mu_cube_from_lambda_cube, mu_siegel
from vvsmf.verify import (
    DEFAULT_P_DELTA,
    CongruenceCase,
    _reduce,
    cube_reduction,
    emit_report,
    load_prime_table,
    mu_F_side,
    mu_f_side,
    siegel_weight,
    sym2_primes,
    vacuous_report,
    verify_harder,
    verify_sym2,
)


def recheck(report, ws):
    """Recompute every congruence under the report's embedding pair."""
    c = report.case
    rho, sigma = report.embedding
    f_list = ws.elliptic(c.r)
    for f in f_list:
        for E in ws.cusp_siegel(c.k):
            if str(E.field.modulus) != report.siegel_field or str(f.field.modulus) != report.elliptic_field:
                continue
            if all(
                _reduce(mu_f_side(c.kind, f, q, c.k, c.j), rho, c.ell) == _reduce(mu_F_side(E, q), sigma, c.ell)
                for q in c.p_delta_list
            ):
                return True
    return False


# -- bookkeeping -------------------------------------------------------------------


def test_weight_bookkeeping_random():
    rng = random.Random(3)
    for _ in range(500):
        r = 2 * rng.randint(6, 40)
        t = rng.randint(1, r - 1)
        k, j = siegel_weight("harder", r, t)
        assert (k, j) == (r - t + 2, 2 * t - r - 2)
        k, j = siegel_weight("sym2", r, t)
        assert (k, j) == (t - r + 2, 2 * r - t - 2)
    for r in range(12, 64, 4):
        assert CongruenceCase("harder", r, r // 2 + 2, 3).weight == (r // 2, 2)
    for r in range(12, 40, 2):
        assert CongruenceCase("sym2", r, 2 * r - 4, 3).weight == (r - 2, 2)


def test_unknown_kind():
    with pytest.raises(ValueError):
        CongruenceCase("other", 32, 18, 211)


def test_prime_tables():
    rows = load_prime_table()
    assert sym2_primes(18) == [541, 2879]
    assert sym2_primes(16) == [373]
    assert all(row.t == 2 * row.r - 4 for row in rows)
    harder = load_prime_table("table1.txt")
    assert [row.ell for row in harder if row.r == 40] == [509, 1447]
    assert [row.ell for row in harder if row.starred] == [434167, 325187, 32210303, 427092920047]
    assert all(row.t == row.r // 2 + 2 for row in harder)


# -- Harder congruences ---------------------------------------------------------------


@pytest.mark.parametrize("r,ell", [(32, 211), (36, 269741), (40, 509), (40, 1447)])
def test_harder_cases(workspace, r, ell):
    rep = verify_harder(r, DEFAULT_P_DELTA, ell, workspace)
    assert rep.verdict == "PASS"
    assert rep.per_prime_verdict == "PASS"
    assert recheck(rep, workspace)


def test_harder_r32_matches_quadratic_orbit(workspace):
    rep = verify_harder(32, (2, 3, 4, 5, 7, 9), 211, workspace)
    assert rep.passed and rep.dim == 2
    assert "degree 2" in rep.form_label
    assert rep.case.ordinary_status == "checked-true"


def test_harder_r40_orbits(workspace):
    a = verify_harder(40, DEFAULT_P_DELTA, 509, workspace)
    b = verify_harder(40, DEFAULT_P_DELTA, 1447, workspace)
    assert "degree 1" in a.form_label and a.embedding[1] is None
    assert "degree 2" in b.form_label


def test_harder_wrong_prime_fails(workspace):
    rep = verify_harder(32, DEFAULT_P_DELTA, 13, workspace)
    assert rep.verdict == "FAIL"
    assert not rep.passed
    assert rep.embedding is None
    assert any(e.matched is None for e in rep.entries)


def test_harder_small_prime_seven(workspace):
    # 7 is below the large-prime threshold, yet the residues agree at every listed prime power
    rep = verify_harder(32, DEFAULT_P_DELTA, 7, workspace)
    assert rep.verdict == "PASS"
    assert recheck(rep, workspace)


def test_harder_rejects_bad_weight(workspace):
    with pytest.raises(ValueError):
        verify_harder(34, (2,), 211, workspace)


def test_empty_prime_power_list_is_vacuous(workspace):
    rep = verify_harder(32, (), 211, workspace)
    assert rep.verdict == "VACUOUS" and rep.passed
    assert "empty" in rep.notes[0]


# -- symmetric square congruences --------------------------------------------------------


@pytest.mark.parametrize("r", [16, 18, 20, 22])
def test_sym2_cases(workspace, r):
    reps = verify_sym2(r, DEFAULT_P_DELTA, sym2_primes(r), workspace)
    assert reps
    for rep in reps:
        assert rep.verdict == "PASS", rep.case.ell
        assert recheck(rep, workspace)


def test_sym2_rejects_two(workspace):
    with pytest.raises(ValueError):
        verify_sym2(16, (2,), [2], workspace)


# -- cubes -------------------------------------------------------------------------------


def test_cube_reduction_harder_r32(workspace):
    (f,) = workspace.elliptic(32)
    for E in workspace.cusp_siegel(16):
        d = local_data(E, 2)
        mu3_f, mu3_F, cert = cube_reduction(
            mu_elliptic(f, 2, 1), mu_elliptic(f, 2, 2), mu_siegel(d, 16, 2, 1), mu_siegel(d, 16, 2, 2), 2, 32, 16, 2
        )
        assert cert.holds and cert.kind == "harder"
        assert mu3_f == mu_elliptic(f, 2, 3)
        assert mu3_F == mu_siegel(d, 16, 2, 3)
        # direct T(8) through the Hecke sum
        assert mu3_F == mu_cube_from_lambda_cube(d, eigenvalue(E, 2, 3), 16, 2)


def test_cube_reduction_sym2_r16(workspace):
    (f,) = workspace.elliptic(16)
    (E,) = workspace.cusp_siegel(14)
    for p in (2, 3):
        d = local_data(E, p)
        mu3_f, mu3_F, cert = cube_reduction(
            mu_elliptic(f, p, 1), mu_elliptic(f, p, 2), mu_siegel(d, 14, 2, 1), mu_siegel(d, 14, 2, 2), p, 16, 14, 2
        )
        assert cert.holds and cert.kind == "sym2"
        assert mu3_f == mu_elliptic(f, p, 3)
        assert mu3_F == mu_siegel(d, 14, 2, 3)


def test_cube_reduction_rejects_unrelated_weights():
    with pytest.raises(ValueError):
        cube_reduction(1, 1, 1, 1, 2, 30, 16, 2)


# -- reports ------------------------------------------------------------------------------


def test_emit_text_and_json(workspace):
    rep = verify_harder(32, (2, 3), 211, workspace)
    text = emit_report(rep)
    assert text.splitlines()[1].split() == ["32", "18", "211", "(16,2)", "2", "PASS"]
    assert emit_report(rep) == text
    doc = json.loads(emit_report(rep, "json"))
    assert doc["verdict"] == "PASS" and doc["ell"] == 211 and (doc["k"], doc["j"]) == (16, 2)
    assert [e["q"] for e in doc["entries"]] == [2, 3]
    assert all(e["matched"][0] == e["matched"][1] for e in doc["entries"])


def test_emit_fail_lists_unmatched(workspace):
    rep = verify_harder(32, (2, 3), 13, workspace)
    text = emit_report(rep)
    assert "FAIL" in text and "unmatched" in text


def test_emit_vacuous():
    rep = vacuous_report("harder", 24, 14, "no large ordinary primes")
    text = emit_report(rep)
    assert "VACUOUS" in text and text.splitlines()[1].split()[2] == "-"
    assert json.loads(emit_report(rep, "json"))["verdict"] == "VACUOUS"


def test_emit_rejects_unknown_format():
    with pytest.raises(ValueError):
        emit_report(vacuous_report("harder", 24, 14, ""), "xml")
