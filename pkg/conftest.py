"""
Pytest configuration and fixtures.
"""

import pytest

from apps.analytics.scan import GridSpec, GridVariable, run_sweep
from apps.casimir.dynamics import PhysicalParams
from apps.casimir.tests.factories import (PhysicalParamsFactory,
                                          StaticParamsFactory)


@pytest.fixture
def switch_params():
    """Frequency-switch scenario: k0 = 1, k0' = 2."""
    return PhysicalParamsFactory()


@pytest.fixture
def static_params():
    """No frequency change: k0' = k0 = 1."""
    return StaticParamsFactory()


@pytest.fixture
def short_sweep(switch_params: PhysicalParams):
    """A coarse time sweep before the back-reaction time at d = 10."""
    return run_sweep(switch_params, 10.0, GridSpec(GridVariable.TIME, 0.0, 19.9, 40))


@pytest.fixture
def output_dir(tmp_path):
    """Return a fresh directory for command output."""
    path = tmp_path / "out"
    path.mkdir()
    return path
