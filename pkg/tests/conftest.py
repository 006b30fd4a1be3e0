"""Shared fixtures: the acceptance ledger printed at the end of the run."""
import time

import pytest

ACCEPTANCE = {}


class _Criterion:
    def __init__(self, number: int, title: str):
        self.number, self.title = number, title
        self.detail = ""
        self.t0 = time.perf_counter()

    def note(self, text: str):
        self.detail = text


@pytest.fixture
def criterion(request):
    """Record one acceptance criterion; the outcome is filled in after the call."""
    marker = request.node.get_closest_marker("criterion")
    crit = _Criterion(*marker.args)
    yield crit
    crit.elapsed = time.perf_counter() - crit.t0
    ACCEPTANCE[request.node.nodeid] = crit


OUTCOMES = {}


def pytest_runtest_logreport(report):
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        OUTCOMES[report.nodeid] = (report.outcome, hasattr(report, "wasxfail"))


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    outcomes = {k: v for k, v in OUTCOMES.items() if k in ACCEPTANCE}
    if not outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    rows = []
    for nodeid, (outcome, xfail) in outcomes.items():
        crit = ACCEPTANCE.get(nodeid)
        if crit is None:
            continue
        if xfail:
            status = "XFAIL"
        else:
            status = "PASS" if outcome == "passed" else "FAIL"
        rows.append((crit.number, status, crit.title, crit.detail,
                     getattr(crit, "elapsed", 0.0)))
    for number, status, title, detail, elapsed in sorted(rows):
        line = f"criterion {number:>2}: {status:<5} {title} ({elapsed:.2f} s)"
        if detail:
            line += f" -- {detail}"
        tr.write_line(line)
