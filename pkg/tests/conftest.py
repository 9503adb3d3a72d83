import pytest

from g31.combinat import binomial
from g31.independence import brute_force_alpha
from g31.solver import branch_and_bound_r, brute_force_r


@pytest.fixture(scope="session")
def bb_tables():
    """r(l) for every l at n = 5, 6, 7 by branch and bound."""
    return {n: [branch_and_bound_r(n, l) for l in range(binomial(n, 3) + 1)] for n in (5, 6, 7)}


@pytest.fixture(scope="session")
def oracle_tables():
    """Oracle r(l): full range at n = 5, 6; l <= 8 and l >= 27 at n = 7."""
    out = {n: {l: brute_force_r(n, l) for l in range(binomial(n, 3) + 1)} for n in (5, 6)}
    out[7] = {l: brute_force_r(7, l) for l in list(range(9)) + list(range(27, 36))}
    return out


@pytest.fixture(scope="session")
def brute_alpha():
    return {n: brute_force_alpha(n) for n in (5, 6, 7)}


_ACCEPTANCE: dict[int, tuple[str, str, float]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    k, title = mark.args
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _ACCEPTANCE[k] = ("PASS" if rep.passed else "FAIL", title, rep.duration)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_ACCEPTANCE):
        status, title, secs = _ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {status}  ({secs:.2f}s)  {title}")
