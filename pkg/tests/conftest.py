from __future__ import annotations

import pytest

from ivmf.dataio import load_bundled_dataset, load_bundled_weights

_acceptance_results: list[tuple[str, str]] = []


@pytest.fixture(scope="session")
def dataset():
    return load_bundled_dataset()


@pytest.fixture(scope="session")
def default_scheme():
    return load_bundled_weights("default")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if call.when != "call" or item.module.__name__ != "test_acceptance":
        return
    label = (item.function.__doc__ or item.name).strip().splitlines()[0]
    status = "PASS" if report.passed else ("SKIP" if report.skipped else "FAIL")
    _acceptance_results.append((label, status))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for label, status in _acceptance_results:
        terminalreporter.write_line(f"[{status}] {label}")
