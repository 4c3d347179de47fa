"""
Casimir-Polder Dynamics - Closed-Form Validation
================================================
Runs the closed-form kernels against the quadrature oracle and against finite
differences in m, and reports pass/fail per check with the largest deviation
seen.
"""

import itertools
import logging
import time
from dataclasses import asdict, dataclass, field
from typing import Any, Callable

import numpy as np

from apps.core.exceptions import CasimirError

from .kernels import MJet, i1_jet, i3_jet
from .oracle import DEFAULT_CONFIG, QuadratureConfig, quad_bare_kernel, quad_i1, quad_i3

logger = logging.getLogger(__name__)

ORACLE_TOL = 1e-9
DERIVATIVE_RTOL = 1e-6
REDUCTION_TOL = 1e-12
DERIVATIVE_STEP = 0.02
MIN_LIGHTCONE_GAP = 0.05
MAX_REPORTED_FAILURES = 5

GRIDS = {
    "full": {
        "m": (0.7, 1.0, 1.5),
        "a": (0.0, 0.3, 0.9, 1.5, 3.0),
        "x0": (0.5, 5.0, 20.0, 60.0),
        "random_points": 200,
    },
    "small": {
        "m": (1.0,),
        "a": (0.0, 0.5, 2.0),
        "x0": (5.0, 20.0),
        "random_points": 20,
    },
}


# =============================================================================
# DATA CLASSES
# =============================================================================


@dataclass
class CheckResult:
    name: str
    tolerance: float
    points: int = 0
    max_deviation: float = 0.0
    failed: int = 0
    failures: list[dict[str, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failed == 0

    def record(self, deviation: float, limit: float, **where: float) -> None:
        self.points += 1
        self.max_deviation = max(self.max_deviation, deviation)
        if not deviation <= limit:
            self.failed += 1
            if len(self.failures) < MAX_REPORTED_FAILURES:
                self.failures.append({**where, "deviation": deviation})

    def to_dict(self) -> dict[str, Any]:
        data = asdict(self)
        data["passed"] = self.passed
        return data


@dataclass
class ValidationReport:
    grid: str
    checks: list[CheckResult]
    duration_seconds: float

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def check(self, name: str) -> CheckResult:
        return next(check for check in self.checks if check.name == name)

    def to_dict(self) -> dict[str, Any]:
        return {
            "grid": self.grid,
            "passed": self.passed,
            "duration_seconds": self.duration_seconds,
            "checks": [check.to_dict() for check in self.checks],
        }


# =============================================================================
# FINITE DIFFERENCES IN m
# =============================================================================


def _stencil(value: Callable[[float], float], m: float, h: float) -> tuple[float, float]:
    f_m2, f_m1, f_0, f_p1, f_p2 = (value(m + k * h) for k in (-2, -1, 0, 1, 2))
    d1 = (f_m2 - 8.0 * f_m1 + 8.0 * f_p1 - f_p2) / (12.0 * h)
    d2 = (-f_m2 + 16.0 * f_m1 - 30.0 * f_0 + 16.0 * f_p1 - f_p2) / (12.0 * h * h)
    return d1, d2


def _finite_difference_jet(value: Callable[[float], float], m: float, length: float) -> tuple[float, float]:
    """
    5-point stencil in m with one Richardson level (h and h/2).

    ``length`` is the distance in m over which ``value`` changes by O(1):
    m itself, 1/x for a phase linear in m, or |a - m| near the light cone.
    """
    h = DERIVATIVE_STEP * length
    coarse = _stencil(value, m, h)
    fine = _stencil(value, m, 0.5 * h)
    d1, d2 = ((16.0 * f - c) / 15.0 for f, c in zip(fine, coarse))
    return d1, d2


def _record_derivatives(
    check: CheckResult, jet: MJet, value: Callable[[float], float], m: float, length: float, **where
) -> None:
    d1, d2 = _finite_difference_jet(value, m, length)
    scale = max(abs(jet.value), abs(jet.dm1), abs(jet.dm2))
    for analytic, numeric in ((jet.dm1, d1), (jet.dm2, d2)):
        check.record(abs(analytic - numeric) / scale, DERIVATIVE_RTOL, m=m, **where)


def _i3_length(m: float, a: float, xd: float) -> float:
    """m-scale of I3: phases move at rate xd and Ci(|a - m| xd) is log-singular at a = m."""
    length = min(m, 1.0 / xd)
    if a > 0.0:
        length = min(length, abs(a - m))
    return length


def _random_points(count: int, seed: int = 20_240_817):
    rng = np.random.default_rng(seed)
    produced = 0
    while produced < count:
        m = float(rng.uniform(0.7, 1.5))
        a = float(rng.uniform(0.0, 3.0))
        if abs(a - m) < MIN_LIGHTCONE_GAP:
            continue
        xd = float(rng.uniform(1.0, 60.0))
        xp = float(rng.uniform(1.0, 60.0))
        produced += 1
        yield m, a, xd, xp


# =============================================================================
# CHECKS
# =============================================================================


def _oracle_checks(grid: dict, cfg: QuadratureConfig) -> list[CheckResult]:
    i1_check = CheckResult("i1_oracle", ORACLE_TOL)
    inside = CheckResult("i3_oracle_inside_lightcone", ORACLE_TOL)
    outside = CheckResult("i3_oracle_outside_lightcone", ORACLE_TOL)
    bare = CheckResult("bare_kernel_linearity", ORACLE_TOL)

    for m, x0 in itertools.product(grid["m"], grid["x0"]):
        reference = quad_i1(m, x0, cfg)
        i1_check.record(abs(i1_jet(m, x0).value - reference.value), ORACLE_TOL, m=m, x0=x0)

    for m, a, x0 in itertools.product(grid["m"], grid["a"], grid["x0"]):
        if abs(a - m) <= MIN_LIGHTCONE_GAP:
            continue
        reference = quad_i3(m, a, x0, x0, cfg)
        check = inside if a < m else outside
        check.record(abs(i3_jet(m, a, x0, x0).value - reference.value), ORACLE_TOL, m=m, a=a, x0=x0)

        kernel = quad_bare_kernel(m, a, x0, cfg)
        closed = i1_jet(m, x0).value - i3_jet(m, a, x0, x0).value
        bare.record(abs(closed - kernel.value), ORACLE_TOL, m=m, a=a, x0=x0)

    return [i1_check, inside, outside, bare]


def _derivative_checks(grid: dict) -> list[CheckResult]:
    i1_check = CheckResult("i1_derivatives", DERIVATIVE_RTOL)
    inside = CheckResult("i3_derivatives_inside_lightcone", DERIVATIVE_RTOL)
    outside = CheckResult("i3_derivatives_outside_lightcone", DERIVATIVE_RTOL)

    for m, a, xd, xp in _random_points(grid["random_points"]):
        _record_derivatives(i1_check, i1_jet(m, xd), lambda s: i1_jet(s, xd).value, m, m, x0=xd)
        check = inside if a < m else outside
        _record_derivatives(
            check,
            i3_jet(m, a, xd, xp),
            lambda s: i3_jet(s, a, xd, xp).value,
            m,
            _i3_length(m, a, xd),
            a=a,
            xd=xd,
            xp=xp,
        )
    return [i1_check, inside, outside]


def _reduction_checks(grid: dict) -> list[CheckResult]:
    check = CheckResult("i3_reduces_to_i1_at_a0", REDUCTION_TOL)
    for m, w, p in itertools.product(grid["m"], grid["x0"], grid["x0"]):
        check.record(abs(i3_jet(m, 0.0, w, p).value - i1_jet(m, w).value), REDUCTION_TOL, m=m, xd=w, xp=p)
    return [check]


def run_validation(grid: str = "small", cfg: QuadratureConfig = DEFAULT_CONFIG) -> ValidationReport:
    """Run every check on the named grid ("small" or "full")."""
    if grid not in GRIDS:
        raise CasimirError(f"unknown validation grid {grid!r}")
    layout = GRIDS[grid]
    started = time.perf_counter()
    checks = _oracle_checks(layout, cfg) + _derivative_checks(layout) + _reduction_checks(layout)
    duration = time.perf_counter() - started
    report = ValidationReport(grid=grid, checks=checks, duration_seconds=duration)
    logger.info(
        "Validation on %s grid: %s in %.1fs",
        grid,
        "passed" if report.passed else "FAILED",
        duration,
    )
    return report
