import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(id, description): exit criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    rep = (yield).get_result()
    m = item.get_closest_marker("acceptance")
    if m is None:
        return
    # a failing setup (e.g. a fixture) also fails the criterion
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _criteria[m.args[0]] = (m.args[1], rep.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(_criteria, key=lambda c: int(c[1:])):
        desc, outcome = _criteria[cid]
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'} criterion {cid[1:]}: {desc}")
