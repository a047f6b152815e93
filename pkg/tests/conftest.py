import os

import pytest
from hypothesis import HealthCheck, settings

from bnsynth import BooleanNetwork, MonotoneDNF

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def dnf(*clauses):
    """Shorthand: dnf([(0, -1)], [(1, 1), (2, 1)]) or dnf(0) / dnf(1)."""
    if len(clauses) == 1 and clauses[0] in (0, 1):
        return MonotoneDNF.constant(clauses[0])
    return MonotoneDNF.from_clauses(clauses)


@pytest.fixture
def net_f():
    # f1 = !x2, f2 = !x1, f3 = !x1 & x2
    return BooleanNetwork([dnf([(1, -1)]), dnf([(0, -1)]), dnf([(0, -1), (1, 1)])], ("x1", "x2", "x3"))


@pytest.fixture
def net_g():
    # g1 = 1, g2 = x1 & x3, g3 = !x2
    return BooleanNetwork([dnf(1), dnf([(0, 1), (2, 1)]), dnf([(1, -1)])], ("x1", "x2", "x3"))


ACCEPTANCE = []


def record(criterion, ok, detail):
    """Log one acceptance-criterion outcome for the terminal summary."""
    ACCEPTANCE.append((criterion, ok, detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, ok, detail in sorted(ACCEPTANCE, key=lambda r: r[0]):
        status = {True: "PASS", False: "FAIL", None: "SKIP"}[ok]
        terminalreporter.write_line(f"{status} criterion {criterion}: {detail}")
