from __future__ import annotations

import pytest

from finalg import presets


@pytest.fixture(scope="session")
def kd8():
    return presets.kd8()


@pytest.fixture(scope="session")
def lam():
    return presets.lambda_()


@pytest.fixture(scope="session")
def gamma():
    return presets.gamma_corrected()


@pytest.fixture(scope="session")
def gamma_printed():
    return presets.gamma_printed()


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import TITLES

    results = {}
    for reports in terminalreporter.stats.values():
        for rep in reports:
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion[" in nodeid and rep.when == "call":
                n = int(nodeid.rsplit("criterion_", 1)[1].rstrip("]"))
                results[n] = "PASS" if rep.passed else "FAIL"
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(f"criterion {n:2d}: {results[n]}  {TITLES[n]}")
