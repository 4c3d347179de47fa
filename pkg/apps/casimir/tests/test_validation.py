"""
Casimir-Polder Dynamics - Validation Suite Tests
================================================
"""

import functools
import math

import pytest

from apps.casimir import validation
from apps.casimir.kernels import INSIDE, i1_jet, i3_jet
from apps.core.exceptions import CasimirError


class TestRunValidation:
    """Tests for the closed-form validation suite."""

    @pytest.fixture(scope="class")
    def small_report(self):
        return validation.run_validation("small")

    def test_small_grid_passes(self, small_report):
        """Test every check passes on the small grid."""
        failing = [check.name for check in small_report.checks if not check.passed]
        assert failing == []
        assert small_report.passed

    def test_every_check_reported(self, small_report):
        """Test the report carries all named checks with points."""
        names = {check.name for check in small_report.checks}
        assert names == {
            "i1_oracle",
            "i3_oracle_inside_lightcone",
            "i3_oracle_outside_lightcone",
            "bare_kernel_linearity",
            "i1_derivatives",
            "i3_derivatives_inside_lightcone",
            "i3_derivatives_outside_lightcone",
            "i3_reduces_to_i1_at_a0",
        }
        assert all(check.points > 0 for check in small_report.checks)

    def test_report_serialises(self, small_report):
        """Test to_dict exposes the pass flag per check."""
        data = small_report.to_dict()
        assert data["grid"] == "small"
        assert data["passed"] is True
        assert all(entry["passed"] for entry in data["checks"])

    def test_wrong_branch_detected(self, monkeypatch):
        """Test forcing l = -1 fails exactly the outside-light-cone checks."""
        monkeypatch.setattr(validation, "i3_jet", functools.partial(i3_jet, branch=INSIDE))
        report = validation.run_validation("small")
        assert not report.passed
        failed = {check.name for check in report.checks if not check.passed}
        assert "i3_oracle_outside_lightcone" in failed
        assert "bare_kernel_linearity" in failed
        assert report.check("i3_oracle_inside_lightcone").passed
        assert report.check("i1_oracle").passed
        assert report.check("i3_reduces_to_i1_at_a0").passed
        assert report.check("i3_oracle_outside_lightcone").failures

    def test_unknown_grid(self):
        """Test an unknown grid name is refused."""
        with pytest.raises(CasimirError):
            validation.run_validation("huge")


class TestCheckResult:
    """Tests for CheckResult bookkeeping."""

    def test_record(self):
        """Test record tracks max deviation and failures."""
        check = validation.CheckResult("demo", 1e-9)
        check.record(1e-12, 1e-9, x0=1.0)
        check.record(1e-6, 1e-9, x0=2.0)
        assert check.points == 2
        assert check.failed == 1
        assert check.max_deviation == 1e-6
        assert check.failures == [{"x0": 2.0, "deviation": 1e-6}]

    def test_nan_deviation_fails(self):
        """Test NaN deviations count as failures."""
        check = validation.CheckResult("demo", 1e-9)
        check.record(float("nan"), 1e-9)
        assert not check.passed


class TestFiniteDifferenceReference:
    """Tests for the finite-difference reference in m."""

    def test_fast_phase(self):
        """Test a phase moving at rate 60 is differentiated to 1e-9."""
        d1, d2 = validation._finite_difference_jet(lambda s: math.cos(60.0 * s), 1.0, 1.0 / 60.0)
        assert d1 == pytest.approx(-60.0 * math.sin(60.0), rel=1e-9)
        assert d2 == pytest.approx(-3600.0 * math.cos(60.0), rel=1e-9)

    @pytest.mark.parametrize(
        "m, a, xd, xp",
        [
            (1.0, 2.9, 60.0, 60.0),
            (0.7, 3.0, 60.0, 1.0),
            (1.5, 3.0, 59.0, 33.0),
            (1.0, 1.05, 60.0, 60.0),
            (1.2, 0.3, 45.0, 12.0),
        ],
    )
    def test_i3_jet_agrees_where_phase_is_fast(self, m, a, xd, xp):
        """Test (a + m) xd up to ~270 passes the derivative check."""
        check = validation.CheckResult("i3", validation.DERIVATIVE_RTOL)
        validation._record_derivatives(
            check,
            i3_jet(m, a, xd, xp),
            lambda s: i3_jet(s, a, xd, xp).value,
            m,
            validation._i3_length(m, a, xd),
        )
        assert check.points == 2
        assert check.passed, check.failures

    @pytest.mark.parametrize("m, x0", [(0.7, 1.0), (1.0, 20.0), (1.5, 60.0)])
    def test_i1_jet_agrees(self, m, x0):
        """Test the i1 jet against the stencil on its own m-scale."""
        check = validation.CheckResult("i1", validation.DERIVATIVE_RTOL)
        validation._record_derivatives(check, i1_jet(m, x0), lambda s: i1_jet(s, x0).value, m, m)
        assert check.passed, check.failures

    def test_length_shrinks_near_lightcone(self):
        """Test the m-scale is the smallest of m, 1/xd and |a - m|."""
        assert validation._i3_length(1.0, 0.0, 0.5) == 1.0
        assert validation._i3_length(1.0, 0.0, 50.0) == pytest.approx(0.02)
        assert validation._i3_length(1.0, 1.05, 2.0) == pytest.approx(0.05)
