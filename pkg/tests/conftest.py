import os
import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default",
    max_examples=25,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# one summary line per acceptance criterion, aggregated over its tests
_CRITERIA: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion the test belongs to")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or (rep.when != "call" and rep.outcome == "passed"):
        return
    ok, failed = _CRITERIA.get(mark.args[0], (True, []))
    if rep.outcome != "passed":
        failed = failed + [item.name.removeprefix("test_")]
    _CRITERIA[mark.args[0]] = (ok and rep.outcome == "passed", failed)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(_CRITERIA):
        ok, failed = _CRITERIA[crit]
        detail = "" if ok else f"  ({', '.join(failed)})"
        terminalreporter.write_line(f"[ACCEPT] criterion {crit}: {'PASS' if ok else 'FAIL'}{detail}")
