import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

_acceptance = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call" and item.fspath.basename == "test_acceptance.py":
        doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
        _acceptance.append((rep.outcome, doc))


def pytest_terminal_summary(terminalreporter):
    """One pass/fail line per acceptance criterion at the end of the run."""
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for outcome, doc in _acceptance:
        mark = "PASS" if outcome == "passed" else outcome.upper()
        terminalreporter.write_line(f"[{mark}] {doc}")
