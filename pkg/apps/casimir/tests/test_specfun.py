"""
Casimir-Polder Dynamics - Si/Ci Tests
=====================================
"""

import math

import mpmath
import numpy as np
import pytest

from apps.casimir.specfun import (X_SWITCH, _si_ci_continued_fraction,
                                  _si_ci_series, aux_fg, ci, ci_jet, si,
                                  si_jet)
from apps.core.exceptions import DomainError, NonFiniteInput

# =============================================================================
# REFERENCE VALUES
# =============================================================================


def assert_within_bound(x):
    """Compare Si(x), Ci(x) with 40-digit references; the error must not exceed the bound."""
    sine = si(x)
    cosine = ci(x)
    with mpmath.workdps(40):
        si_err = abs(mpmath.mpf(sine.value) - mpmath.si(x))
        ci_err = abs(mpmath.mpf(cosine.value) - mpmath.ci(x))
    assert si_err <= sine.abs_err_bound, (x, float(si_err), sine.abs_err_bound)
    assert ci_err <= cosine.abs_err_bound, (x, float(ci_err), cosine.abs_err_bound)


class TestReferenceValues:
    """Tests against tabulated and arbitrary-precision values."""

    def test_si_at_zero(self):
        """Test Si(0) is exactly zero."""
        assert si(0.0).value == 0.0

    def test_si_at_one(self):
        """Test Si(1) against the tabulated value."""
        assert si(1.0).value == pytest.approx(0.946083070367183, abs=1e-15)

    def test_ci_at_one(self):
        """Test Ci(1) against the tabulated value."""
        assert ci(1.0).value == pytest.approx(0.3374039229009682, abs=1e-15)

    def test_si_ci_at_ten(self):
        """Test both functions past the series regime."""
        assert si(10.0).value == pytest.approx(1.658347594218874, abs=1e-14)
        assert ci(10.0).value == pytest.approx(-0.04545643300445537, abs=1e-14)

    def test_ci_small_argument_is_log_dominated(self):
        """Test Ci(1e-300) ~ gamma + ln(1e-300)."""
        expected = 0.5772156649015329 + math.log(1e-300)
        assert ci(1e-300).value == pytest.approx(expected, rel=1e-15)

    @pytest.mark.parametrize("x", [1e-8, 0.01, 0.5, 1.0, 3.9, 4.0, 4.1, 7.5, 16.0, 42.0, 100.0, 1e3, 1e5, 1e8])
    def test_against_mpmath(self, x):
        """Test agreement with mpmath within the reported bound."""
        assert_within_bound(x)


# =============================================================================
# DOMAIN & SYMMETRY
# =============================================================================


class TestDomain:
    """Tests for argument handling."""

    @pytest.mark.parametrize("x", [0.3, 2.0, 5.0, 40.0, 1234.5])
    def test_si_is_odd(self, x):
        """Test Si(-x) = -Si(x) exactly."""
        assert si(-x).value == -si(x).value

    @pytest.mark.parametrize("x", [0.0, -1.0, -1e-300])
    def test_ci_rejects_non_positive(self, x):
        """Test Ci(x <= 0) raises DomainError."""
        with pytest.raises(DomainError):
            ci(x)

    @pytest.mark.parametrize("x", [math.nan, math.inf, -math.inf])
    def test_non_finite_rejected(self, x):
        """Test NaN and infinities raise NonFiniteInput."""
        with pytest.raises(NonFiniteInput):
            si(x)
        with pytest.raises(NonFiniteInput):
            ci(x)


# =============================================================================
# ERROR BOUNDS & REGIMES
# =============================================================================


class TestErrorBounds:
    """Tests for the reported absolute error bounds."""

    def test_bounds_small_across_range(self):
        """Test the bound stays at or below 1e-13 across [1e-200, 1e8]."""
        for x in np.logspace(-200, 8, 400):
            assert si(float(x)).abs_err_bound <= 1e-13
            assert ci(float(x)).abs_err_bound <= 1e-13

    def test_bound_holds_above_switchover(self):
        """Test the continued-fraction bound on a dense sample of (4, 20]."""
        for x in np.linspace(X_SWITCH, 20.0, 1601)[1:]:
            assert_within_bound(float(x))
        assert_within_bound(4.0747)

    def test_bound_holds_for_large_arguments(self):
        """Test the bound on log-uniform arguments in (4, 1e8]."""
        rng = np.random.default_rng(7)
        for x in np.exp(rng.uniform(math.log(X_SWITCH), math.log(1e8), 400)):
            assert_within_bound(float(x))

    def test_regime_boundary_continuity(self):
        """Test the series and continued fraction agree at the switchover."""
        series_si, series_ci = _si_ci_series(X_SWITCH)
        cf_si, cf_ci = _si_ci_continued_fraction(X_SWITCH)
        assert abs(series_si.value - cf_si.value) <= 1e-12
        assert abs(series_ci.value - cf_ci.value) <= 1e-12

    def test_envelope_for_large_arguments(self):
        """Test |Si - pi/2| and |Ci| stay inside 2/x beyond x = 50."""
        for x in np.linspace(50.5, 1e4, 300):
            x = float(x)
            assert abs(si(x).value - math.pi / 2) <= 2.0 / x
            assert abs(ci(x).value) <= 2.0 / x

    def test_auxiliary_functions_match_definition(self):
        """Test f and g reproduce Si and Ci."""
        for x in (0.7, 3.0, 6.0, 25.0):
            f, g = aux_fg(x)
            assert f * math.sin(x) - g * math.cos(x) == pytest.approx(ci(x).value, abs=1e-14)
            assert math.pi / 2 - f * math.cos(x) - g * math.sin(x) == pytest.approx(si(x).value, abs=1e-14)


# =============================================================================
# JETS
# =============================================================================


class TestJets:
    """Tests for first and second derivatives."""

    def test_si_jet_at_zero(self):
        """Test the removable singularity of sin(x)/x."""
        assert si_jet(0.0) == (0.0, 1.0, 0.0)

    def test_first_derivatives_match_finite_differences(self):
        """Test central differences of si/ci against the jets at 1000 points."""
        rng = np.random.default_rng(7)
        for x in rng.uniform(0.01, 100.0, 1000):
            x = float(x)
            h = x * 1e-6
            fd_si = (si(x + h).value - si(x - h).value) / (2 * h)
            fd_ci = (ci(x + h).value - ci(x - h).value) / (2 * h)
            assert fd_si == pytest.approx(si_jet(x).d1, rel=1e-6, abs=1e-9)
            assert fd_ci == pytest.approx(ci_jet(x).d1, rel=1e-6, abs=1e-9)

    @pytest.mark.parametrize("x", [0.05, 0.099, 0.1, 0.5, 3.0, 12.0])
    def test_second_derivatives(self, x):
        """Test d2 against central differences of d1."""
        h = x * 1e-5
        fd_si = (si_jet(x + h).d1 - si_jet(x - h).d1) / (2 * h)
        fd_ci = (ci_jet(x + h).d1 - ci_jet(x - h).d1) / (2 * h)
        assert si_jet(x).d2 == pytest.approx(fd_si, rel=1e-6, abs=1e-9)
        assert ci_jet(x).d2 == pytest.approx(fd_ci, rel=1e-6, abs=1e-9)

    def test_si_jet_negative_argument(self):
        """Test the jet of Si is odd/even/odd."""
        plus = si_jet(2.5)
        minus = si_jet(-2.5)
        assert minus.value == -plus.value
        assert minus.d1 == pytest.approx(plus.d1, rel=1e-15)
        assert minus.d2 == pytest.approx(-plus.d2, rel=1e-15)
