import os

import pytest
from hypothesis import HealthCheck, settings

from qcapelli.qmatrix import QuantumMatrixAlgebra
from qcapelli.scalars import Params

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

SEEDS = (11, 23, 37)


@pytest.fixture(scope="session")
def alg2():
    return QuantumMatrixAlgebra(Params(2))


@pytest.fixture(scope="session")
def alg3():
    return QuantumMatrixAlgebra(Params(3))


def failures(report):
    """Readable summary for assertion messages."""
    return [(c.id, c.status, c.detail, c.counterexample) for c in report.failures()]


# criterion number -> (verdict, line); filled by test_acceptance
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[num])
