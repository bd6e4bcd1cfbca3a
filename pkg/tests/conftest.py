import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hardyz import dirichlet, moments, scan_zeros

_ACCEPTANCE: list = []


def record_acceptance(number: int, title: str, passed: bool, detail: str):
    _ACCEPTANCE.append((number, title, passed, detail))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(_ACCEPTANCE):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"  [{status}] criterion {number}: {title} ({detail})")


@pytest.fixture(scope="session")
def zero_scan_5000():
    """One census to T=5000, shared by everything downstream (~20 s)."""
    return scan_zeros(5000.0)


@pytest.fixture(scope="session")
def theorem():
    return moments.main_term_theorem()


@pytest.fixture(scope="session")
def coeff_table_1e6():
    return dirichlet.build_tables(1_000_000)


@pytest.fixture(scope="session")
def coeff_table_small():
    return dirichlet.build_tables(5000)


@pytest.fixture(scope="session")
def continuous_reports():
    """Hall-moment quadratures for k in {0,1}, T in {500,1000,2000} (~15 s)."""
    return {
        (k, t): moments.continuous_moment(k, float(t))
        for k in (0, 1)
        for t in (500, 1000, 2000)
    }
