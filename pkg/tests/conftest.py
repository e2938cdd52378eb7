import os
import time
from contextlib import contextmanager

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=1000, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


# ---------------------------------------------------------------- acceptance report

_ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def criterion():
    """``with criterion(n, title, limit):`` times the block and records one result line."""
    @contextmanager
    def run(number: int, title: str, limit: float | None = None):
        start = time.perf_counter()
        failure = None
        try:
            yield
        except BaseException as exc:
            failure = exc
        elapsed = time.perf_counter() - start
        timing = f"{elapsed:.2f} s" + (f" (limit {limit:g} s)" if limit else "")
        slow = limit is not None and elapsed >= limit
        verdict = "FAIL" if failure is not None or slow else "PASS"
        _ACCEPTANCE[number] = f"[{verdict}] criterion {number:2d}: {title}; {timing}"
        if failure is not None:
            raise failure
        assert not slow, f"criterion {number} took {elapsed:.2f} s, limit {limit} s"
    return run


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(_ACCEPTANCE):
            terminalreporter.write_line(_ACCEPTANCE[n])
