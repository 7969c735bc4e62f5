import pytest

CRITERIA = {
    1: "Plancherel normalization (q in {2,3,5}, enumeration n <= 5, generating function n <= 25)",
    2: "GL(2,2) and GL(3,2) degree multisets",
    3: "Euler identity, n <= 25, q in {2,3}",
    4: "factorization identity, order <= 20, and irreducible counts",
    5: "Cauchy specialization, d*m <= 16, q in {2,3}",
    6: "convergence of marginals to the limit laws",
    7: "samplers: exact DP probabilities, TV distance, size chi-square",
    8: "hook-sum identity, |lambda| <= 20",
}

_outcomes: dict[int, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(k): acceptance criterion number k")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _outcomes.setdefault(marker.args[0], []).append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for k, text in CRITERIA.items():
        results = _outcomes.get(k)
        if results is None:
            status = "NOT RUN"
        else:
            status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"criterion {k}: {status}  {text}")
