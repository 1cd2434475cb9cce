import sys

import pytest
from hypothesis import settings

from tietz.potential import CentrifugalScheme, MoleculeParams, centrifugal_coeffs

# Reference values from mpmath are slow; runs are seeded so reruns match.
settings.register_profile("tietz", deadline=None, derandomize=True)
settings.load_profile("tietz")

DESK = dict(De=10.0, re=1.2, alpha=0.5)


def desk(q, **kw):
    return MoleculeParams(q=q, **{**DESK, **kw})


@pytest.fixture
def strong():
    return desk(-2.0)


@pytest.fixture
def ga(strong):
    return centrifugal_coeffs(CentrifugalScheme.GreeneAldrich, strong)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "REPORT", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for key in sorted(lines):
            terminalreporter.write_line(lines[key])
