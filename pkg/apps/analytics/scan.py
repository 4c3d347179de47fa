"""
Casimir-Polder Dynamics - Sweeps & Trace Analysis
=================================================
Time and distance sweeps of energies, forces and the relative force
difference, plus the sign-change / extremum / settling analysis of a single
column of a sweep.
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any, Optional

import numpy as np
import pandas as pd
from django.db import models

import apps
from apps.casimir.dynamics import (EvalPoint, PhysicalParams, StateKind,
                                   dimensionless_args, energy_bare,
                                   energy_dressed, energy_partial, force,
                                   relative_difference)
from apps.casimir.kernels import LIGHTCONE_EPS
from apps.core.exceptions import DomainError, InsufficientData, LightConeProximity

logger = logging.getLogger(__name__)

COLUMNS = ("t", "d", "a", "E_d", "E_b", "E_p", "F_d", "F_b", "F_p", "relF")
MIN_TRACE_ROWS = 10

# Static reference of each time-dependent column.
REFERENCE_COLUMNS = {
    "E_b": "E_d",
    "E_p": "E_d",
    "F_b": "F_d",
    "F_p": "F_d",
    "relF": None,
}


class GridVariable(models.TextChoices):
    TIME = "time", "Time"
    DISTANCE = "distance", "Distance"


# =============================================================================
# DATA CLASSES
# =============================================================================


@dataclass(frozen=True)
class GridSpec:
    """``steps`` evenly spaced samples of the swept coordinate, endpoints included."""

    variable: str
    start: float
    stop: float
    steps: int
    exclude_lightcone: bool = True

    def __post_init__(self):
        if self.variable not in GridVariable.values:
            raise DomainError(f"unknown grid variable {self.variable!r}")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise DomainError("grid bounds must be finite")
        if not self.start < self.stop:
            raise DomainError(f"grid needs start < stop, got {self.start!r} >= {self.stop!r}")
        if self.steps < 2:
            raise DomainError(f"grid needs at least 2 steps, got {self.steps!r}")
        if self.variable == GridVariable.TIME and self.start < 0:
            raise DomainError("time grid must start at t >= 0")
        if self.variable == GridVariable.DISTANCE and self.start <= 0:
            raise DomainError("distance grid must start at d > 0")

    @property
    def column(self) -> str:
        return "t" if self.variable == GridVariable.TIME else "d"

    def points(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)


@dataclass(frozen=True)
class ExcludedPoint:
    """A grid point dropped because it fell inside the light-cone window."""

    index: int
    t: float
    d: float
    a: float


@dataclass(frozen=True)
class SweepMeta:
    params: PhysicalParams
    grid: GridSpec
    fixed: float
    lightcone_eps: float
    excluded: tuple[ExcludedPoint, ...] = ()
    version: str = apps.__version__

    def to_dict(self, include_excluded: bool = True) -> dict[str, Any]:
        data = {
            "params": asdict(self.params),
            "grid": asdict(self.grid),
            "fixed": self.fixed,
            "lightcone_eps": self.lightcone_eps,
            "version": self.version,
        }
        if include_excluded:
            data["excluded"] = [asdict(point) for point in self.excluded]
        return data

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "SweepMeta":
        return cls(
            params=PhysicalParams(**data["params"]),
            grid=GridSpec(**data["grid"]),
            fixed=data["fixed"],
            lightcone_eps=data["lightcone_eps"],
            excluded=tuple(ExcludedPoint(**point) for point in data.get("excluded", ())),
            version=data["version"],
        )


@dataclass
class SweepTable:
    """Rows indexed by grid position, in the fixed column order."""

    rows: pd.DataFrame
    meta: SweepMeta

    def __len__(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class Extremum:
    location: float
    value: float
    kind: str


@dataclass
class TraceAnalysis:
    column: str
    sign_changes: list[tuple[float, float]] = field(default_factory=list)
    extrema: list[Extremum] = field(default_factory=list)
    settling_time: Optional[float] = None


# =============================================================================
# SWEEPS
# =============================================================================


def evaluate_row(p: PhysicalParams, pt: EvalPoint, lightcone_eps: float = LIGHTCONE_EPS) -> dict[str, float]:
    """All table quantities at one point; raises LightConeProximity near a = 1."""
    e_d = energy_dressed(p, pt.d)
    e_b = energy_bare(p, pt, lightcone_eps)
    e_p = energy_partial(p, pt, lightcone_eps)
    f_d = force(StateKind.DRESSED, p, pt, lightcone_eps)
    f_b = force(StateKind.BARE, p, pt, lightcone_eps)
    f_p = force(StateKind.PARTIAL, p, pt, lightcone_eps)
    return {
        "t": pt.t,
        "d": pt.d,
        "a": dimensionless_args(p, pt).a,
        "E_d": e_d,
        "E_b": e_b,
        "E_p": e_p,
        "F_d": f_d,
        "F_b": f_b,
        "F_p": f_p,
        "relF": relative_difference(f_p, f_d, pt.d),
    }


def _sweep_job(job: tuple) -> tuple[bool, dict[str, float]]:
    p, t, d, lightcone_eps = job
    pt = EvalPoint(d=d, t=t)
    try:
        return True, evaluate_row(p, pt, lightcone_eps)
    except LightConeProximity:
        return False, {"t": t, "d": d, "a": dimensionless_args(p, pt).a}


def run_sweep(
    p: PhysicalParams,
    fixed: float,
    grid: GridSpec,
    *,
    lightcone_eps: float = LIGHTCONE_EPS,
    workers: int = 1,
) -> SweepTable:
    """
    Evaluate every grid point. ``fixed`` is the distance for time sweeps and
    the time for distance sweeps.

    Light-cone points are listed in ``meta.excluded``; with
    ``grid.exclude_lightcone`` off they stay in the table with NaN in every
    time-dependent column instead.
    """
    points = grid.points()
    if grid.variable == GridVariable.TIME:
        jobs = [(p, float(t), fixed, lightcone_eps) for t in points]
    else:
        jobs = [(p, fixed, float(d), lightcone_eps) for d in points]

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_sweep_job, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        results = [_sweep_job(job) for job in jobs]

    rows = {}
    excluded = []
    for index, (ok, values) in enumerate(results):
        if ok:
            rows[index] = values
            continue
        excluded.append(ExcludedPoint(index=index, **values))
        if not grid.exclude_lightcone:
            d = values["d"]
            rows[index] = {
                **values,
                "E_d": energy_dressed(p, d),
                "E_b": math.nan,
                "E_p": math.nan,
                "F_d": force(StateKind.DRESSED, p, EvalPoint(d=d, t=values["t"]), lightcone_eps),
                "F_b": math.nan,
                "F_p": math.nan,
                "relF": math.nan,
            }

    if excluded:
        logger.info(
            "Sweep excluded %d light-cone point(s): a=%s",
            len(excluded),
            ", ".join(repr(point.a) for point in excluded),
        )
    logger.info("Sweep over %s finished: %d rows", grid.variable, len(rows))

    frame = pd.DataFrame.from_dict(rows, orient="index", columns=list(COLUMNS))
    meta = SweepMeta(
        params=p,
        grid=grid,
        fixed=fixed,
        lightcone_eps=lightcone_eps,
        excluded=tuple(excluded),
    )
    return SweepTable(rows=frame, meta=meta)


# =============================================================================
# TRACE ANALYSIS
# =============================================================================


def _sign_changes(x: np.ndarray, y: np.ndarray) -> list[tuple[float, float]]:
    nonzero = np.flatnonzero(np.sign(y))
    signs = np.sign(y[nonzero])
    flips = np.flatnonzero(signs[1:] != signs[:-1])
    return [(float(x[nonzero[i]]), float(x[nonzero[i + 1]])) for i in flips]


def _extrema(x: np.ndarray, y: np.ndarray) -> list[Extremum]:
    left = y[1:-1] - y[:-2]
    right = y[2:] - y[1:-1]
    turning = np.flatnonzero(left * right < 0) + 1
    return [
        Extremum(float(x[i]), float(y[i]), "max" if y[i] > y[i - 1] else "min")
        for i in turning
    ]


def _windowed_mean(x: np.ndarray, values: np.ndarray, window: float) -> np.ndarray:
    """Mean of the samples with coordinate in [x_i, x_i + window], truncated at the end."""
    cumulative = np.concatenate(([0.0], np.cumsum(values)))
    start = np.arange(len(x))
    end = np.searchsorted(x, x + window, side="right")
    return (cumulative[end] - cumulative[start]) / (end - start)


def _settling_time(x: np.ndarray, deviation: np.ndarray, threshold: np.ndarray) -> Optional[float]:
    violating = np.flatnonzero(np.abs(deviation) > threshold)
    if violating.size == 0:
        return float(x[0])
    last = int(violating[-1])
    if last + 1 >= len(x):
        return None
    return float(x[last + 1])


def analyze_trace(
    table: SweepTable,
    column: str,
    window: float,
    tol: float,
    reference: Optional[str] = "auto",
) -> TraceAnalysis:
    """
    Sign changes, local extrema and settling time of one column.

    The settling reference is the static column of ``column`` (E_d for
    energies, F_d for forces) unless ``reference`` names another one; ``None``
    (the default for relF) settles towards zero with absolute tolerance ``tol``.
    """
    if column not in COLUMNS:
        raise DomainError(f"unknown column {column!r}; expected one of {', '.join(COLUMNS)}")
    if not window > 0:
        raise DomainError(f"window must be > 0, got {window!r}")
    if reference == "auto":
        reference = REFERENCE_COLUMNS.get(column, column)

    rows = table.rows.dropna(subset=[column])
    if len(rows) < MIN_TRACE_ROWS:
        raise InsufficientData(
            f"trace {column!r} has {len(rows)} rows, need at least {MIN_TRACE_ROWS}"
        )

    x = rows[table.meta.grid.column].to_numpy(dtype=float)
    y = rows[column].to_numpy(dtype=float)

    if reference is None:
        deviation = _windowed_mean(x, y, window)
        threshold = np.full_like(deviation, tol)
    else:
        static = rows[reference].to_numpy(dtype=float)
        deviation = _windowed_mean(x, y - static, window)
        threshold = tol * _windowed_mean(x, np.abs(static), window)

    return TraceAnalysis(
        column=column,
        sign_changes=_sign_changes(x, y),
        extrema=_extrema(x, y),
        settling_time=_settling_time(x, deviation, threshold),
    )
