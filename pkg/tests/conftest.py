import math

import pytest


def trial_division_is_prime(m: int) -> bool:
    if m < 2:
        return False
    for d in range(2, math.isqrt(m) + 1):
        if m % d == 0:
            return False
    return True


@pytest.fixture(scope="session")
def sieve_1e6():
    """Smallest-prime-factor table for 0..10**6, built by a plain sieve."""
    limit = 10**6
    spf = list(range(limit + 1))
    for i in range(2, math.isqrt(limit) + 1):
        if spf[i] == i:
            for k in range(i * i, limit + 1, i):
                if spf[k] == k:
                    spf[k] = i
    return spf


_acceptance_results: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.failed:
        _acceptance_results[name] = "FAIL"
    elif report.when == "call" and name not in _acceptance_results:
        _acceptance_results[name] = "PASS"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for name, outcome in _acceptance_results.items():
        terminalreporter.write_line(f"{outcome}  {name}")
