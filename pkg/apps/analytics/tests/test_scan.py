"""
Casimir-Polder Dynamics - Sweep & Trace Analysis Tests
======================================================
"""

import math

import numpy as np
import pandas as pd
import pytest

from apps.analytics.scan import (COLUMNS, GridSpec, GridVariable, SweepMeta,
                                 SweepTable, analyze_trace, evaluate_row,
                                 run_sweep)
from apps.casimir.dynamics import EvalPoint, energy_dressed
from apps.casimir.tests.factories import PhysicalParamsFactory, TimeGridFactory
from apps.core.exceptions import DomainError, InsufficientData, LightConeProximity


def synthetic_table(t, **columns):
    """Build a time-sweep table from arrays; missing columns are zero."""
    data = {name: np.zeros_like(t) for name in COLUMNS}
    data["t"] = t
    data["d"] = np.full_like(t, 10.0)
    data.update(columns)
    grid = GridSpec(GridVariable.TIME, float(t[0]), float(t[-1]), len(t))
    meta = SweepMeta(params=PhysicalParamsFactory(), grid=grid, fixed=10.0, lightcone_eps=1e-3)
    return SweepTable(rows=pd.DataFrame(data, columns=list(COLUMNS)), meta=meta)


# =============================================================================
# GRID
# =============================================================================


class TestGridSpec:
    """Tests for grid validation."""

    def test_points_include_endpoints(self):
        """Test steps samples from start to stop."""
        points = TimeGridFactory(start=0.0, stop=10.0, steps=11).points()
        assert len(points) == 11
        assert points[0] == 0.0
        assert points[-1] == 10.0

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"start": 5.0, "stop": 5.0},
            {"start": 6.0, "stop": 5.0},
            {"steps": 1},
            {"start": -1.0},
            {"stop": math.inf},
            {"variable": "angle"},
        ],
    )
    def test_invalid(self, kwargs):
        """Test malformed grids raise DomainError."""
        with pytest.raises(DomainError):
            TimeGridFactory(**kwargs)

    def test_distance_grid_positive(self):
        """Test a distance grid cannot start at zero."""
        with pytest.raises(DomainError):
            GridSpec(GridVariable.DISTANCE, 0.0, 5.0, 10)

    def test_column(self):
        """Test the swept column name."""
        assert TimeGridFactory().column == "t"
        assert GridSpec(GridVariable.DISTANCE, 1.0, 5.0, 10).column == "d"


# =============================================================================
# SWEEPS
# =============================================================================


class TestEvaluateRow:
    """Tests for single-point rows."""

    def test_row_has_every_column(self, switch_params):
        """Test the row carries the table columns."""
        row = evaluate_row(switch_params, EvalPoint(d=10.0, t=5.0))
        assert tuple(row) == COLUMNS
        assert row["a"] == 0.25
        assert row["E_d"] == energy_dressed(switch_params, 10.0)

    def test_lightcone(self, switch_params):
        """Test a = 1 raises LightConeProximity."""
        with pytest.raises(LightConeProximity):
            evaluate_row(switch_params, EvalPoint(d=10.0, t=20.0))


class TestRunSweep:
    """Tests for grid sweeps."""

    def test_short_sweep(self, short_sweep):
        """Test a sweep before the back-reaction time keeps every row."""
        assert len(short_sweep) == 40
        assert short_sweep.meta.excluded == ()
        assert list(short_sweep.rows.columns) == list(COLUMNS)
        assert short_sweep.rows["t"].is_monotonic_increasing
        assert not short_sweep.rows.isna().any().any()

    def test_bare_energy_starts_at_zero(self, short_sweep):
        """Test the first row of a sweep from t = 0 has E_b = 0."""
        assert short_sweep.rows.loc[0, "E_b"] == 0.0

    def test_lightcone_point_excluded(self, switch_params):
        """Test t = 2d/c is listed in meta.excluded and dropped from the rows."""
        table = run_sweep(switch_params, 10.0, TimeGridFactory(start=0.0, stop=40.0, steps=5))
        assert len(table) == 4
        assert [point.index for point in table.meta.excluded] == [2]
        assert table.meta.excluded[0].a == 1.0
        assert 2 not in table.rows.index

    def test_lightcone_point_kept_as_nan(self, switch_params):
        """Test include mode keeps the row with NaN time-dependent columns."""
        grid = TimeGridFactory(start=0.0, stop=40.0, steps=5, exclude_lightcone=False)
        table = run_sweep(switch_params, 10.0, grid)
        assert len(table) == 5
        row = table.rows.loc[2]
        assert math.isnan(row["E_b"])
        assert math.isnan(row["relF"])
        assert row["E_d"] == energy_dressed(switch_params, 10.0)

    def test_distance_sweep(self, switch_params):
        """Test a distance sweep at fixed time."""
        table = run_sweep(switch_params, 5.0, GridSpec(GridVariable.DISTANCE, 2.0, 20.0, 7))
        assert len(table) == 7
        assert (table.rows["t"] == 5.0).all()
        assert table.rows["a"].to_numpy() == pytest.approx(5.0 / (2.0 * table.rows["d"].to_numpy()))

    def test_workers_match_serial(self, switch_params):
        """Test a process pool gives the same table."""
        grid = TimeGridFactory(start=0.0, stop=30.0, steps=7)
        serial = run_sweep(switch_params, 10.0, grid)
        parallel = run_sweep(switch_params, 10.0, grid, workers=2)
        pd.testing.assert_frame_equal(serial.rows, parallel.rows)
        assert serial.meta == parallel.meta


# =============================================================================
# TRACE ANALYSIS
# =============================================================================


class TestAnalyzeTrace:
    """Tests for sign changes, extrema and settling."""

    def test_sign_changes_and_extrema(self):
        """Test a sine trace brackets its zeros and turning points."""
        t = np.linspace(0.0, 10.0, 101)
        table = synthetic_table(t, F_d=np.ones_like(t), F_p=np.sin(t))
        analysis = analyze_trace(table, "F_p", window=1.0, tol=0.05)
        assert len(analysis.sign_changes) == 3
        for (left, right), zero in zip(analysis.sign_changes, (math.pi, 2 * math.pi, 3 * math.pi)):
            assert left < zero < right
        assert [extremum.kind for extremum in analysis.extrema] == ["max", "min", "max"]
        assert analysis.extrema[0].location == pytest.approx(math.pi / 2, abs=0.1)

    def test_settles_after_step(self):
        """Test the settling time is the first sample after the last violation."""
        t = np.linspace(0.0, 10.0, 101)
        static = -np.ones_like(t)
        partial = np.where(t < 5.0, 2.0 * static, static)
        table = synthetic_table(t, F_d=static, F_p=partial)
        assert analyze_trace(table, "F_p", window=0.05, tol=0.05).settling_time == 5.0

    def test_settled_from_start(self):
        """Test a trace equal to its reference settles at the first sample."""
        t = np.linspace(0.0, 10.0, 101)
        table = synthetic_table(t, E_d=-np.ones_like(t), E_p=-np.ones_like(t))
        assert analyze_trace(table, "E_p", window=1.0, tol=0.01).settling_time == 0.0

    def test_never_settles(self):
        """Test a persistent offset gives no settling time."""
        t = np.linspace(0.0, 10.0, 101)
        table = synthetic_table(t, F_d=-np.ones_like(t), F_b=-2.0 * np.ones_like(t))
        assert analyze_trace(table, "F_b", window=1.0, tol=0.05).settling_time is None

    def test_relative_force_uses_absolute_tolerance(self):
        """Test relF settles towards zero with an absolute tolerance."""
        t = np.linspace(0.0, 10.0, 101)
        table = synthetic_table(t, relF=np.full_like(t, 0.01))
        assert analyze_trace(table, "relF", window=1.0, tol=0.05).settling_time == 0.0
        assert analyze_trace(table, "relF", window=1.0, tol=0.001).settling_time is None

    def test_insufficient_rows(self):
        """Test fewer than ten rows raise InsufficientData."""
        t = np.linspace(0.0, 1.0, 9)
        with pytest.raises(InsufficientData):
            analyze_trace(synthetic_table(t), "F_p", window=0.5, tol=0.05)

    def test_nan_rows_do_not_count(self):
        """Test NaN rows are dropped before the length check."""
        t = np.linspace(0.0, 1.0, 12)
        values = np.where(t < 0.5, np.nan, 1.0)
        with pytest.raises(InsufficientData):
            analyze_trace(synthetic_table(t, F_p=values), "F_p", window=0.5, tol=0.05)

    @pytest.mark.parametrize("column, window", [("G_x", 1.0), ("F_p", 0.0), ("F_p", -1.0)])
    def test_invalid_arguments(self, column, window):
        """Test unknown columns and non-positive windows raise DomainError."""
        t = np.linspace(0.0, 10.0, 20)
        with pytest.raises(DomainError):
            analyze_trace(synthetic_table(t), column, window=window, tol=0.05)
