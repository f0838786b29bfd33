import random

import pytest

from ramsey_workbench.enumeration import nonisomorphic_graphs

ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(criterion, title): an acceptance criterion check")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None:
        return
    criterion, title = mark.args
    entry = ACCEPTANCE.setdefault(criterion, {"title": title, "parts": [], "seconds": 0.0})
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        entry["parts"].append((item.name, rep.outcome))
        entry["seconds"] += rep.duration


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion in sorted(ACCEPTANCE, key=lambda c: int(c)):
        entry = ACCEPTANCE[criterion]
        ok = all(outcome == "passed" for _, outcome in entry["parts"])
        verdict = "PASS" if ok else "FAIL"
        parts = ", ".join(f"{name}={outcome}" for name, outcome in entry["parts"])
        terminalreporter.write_line(
            f"criterion {criterion}: {verdict}  {entry['title']}  ({entry['seconds']:.1f} s; {parts})"
        )


@pytest.fixture(scope="session")
def graphs_upto_7():
    return [g for n in range(8) for g in nonisomorphic_graphs(n)]


@pytest.fixture(scope="session")
def graphs_upto_8(graphs_upto_7):
    return graphs_upto_7 + list(nonisomorphic_graphs(8))


@pytest.fixture
def rng():
    return random.Random(20240611)
