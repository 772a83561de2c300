import pytest

from vvsmf.siegel.satoh import IgusaRing
from vvsmf.verify import Workspace

DESK_D = 324
DESK_S = 81


@pytest.fixture(scope="session")
def workspace():
    """Igusa ring and eigen systems at the desk bounds, shared by all tests."""
    return Workspace(DESK_D, DESK_S)


@pytest.fixture(scope="session")
def ring(workspace) -> IgusaRing:
    return workspace.ring


@pytest.fixture(scope="session")
def small_ring() -> IgusaRing:
    return IgusaRing(40, 10)


# -- acceptance summary ---------------------------------------------------------------

_CRITERIA: dict[int, list[tuple[str, str]]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        if hasattr(rep, "wasxfail"):
            status = "FAIL" if rep.skipped else "XPASS"
        elif rep.skipped:
            status = "SKIP"
        else:
            status = "PASS" if rep.passed else "FAIL"
        _CRITERIA.setdefault(mark.args[0], []).append((item.name, status))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        results = _CRITERIA[n]
        statuses = {s for _, s in results}
        if statuses == {"SKIP"}:
            verdict = "SKIP"
        elif statuses <= {"PASS", "SKIP"}:
            verdict = "PASS"
        else:
            verdict = "FAIL"
        detail = ", ".join(f"{name} {s}" for name, s in results if s != "PASS")
        tr.write_line(f"criterion {n:>2}: {verdict}" + (f"  ({detail})" if detail else f"  ({len(results)} checks)"))
