"""
Casimir-Polder Dynamics - Quadrature Oracle
===========================================
Direct numerical evaluation of the semi-infinite oscillatory integrals behind
the closed forms in ``kernels``. Used to validate them, never in the
production energy path.

Method: the integrand sin(kappa x + theta) / (x + shift) is split at the
zeros of the sine. Each half-period is integrated with QUADPACK (adaptive
Gauss-Kronrod with an embedded error estimate); the resulting alternating
series of half-period integrals is summed with the Euler transform applied to
its partial sums.
"""

import logging
import math
from dataclasses import dataclass

from scipy import integrate

from apps.core.exceptions import DomainError, LightConeProximity, NoConvergence, NonFiniteInput

logger = logging.getLogger(__name__)

ORACLE_LIGHTCONE_EPS = 1e-6


# =============================================================================
# DATA CLASSES
# =============================================================================


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and budgets for the oracle."""

    abs_tol: float = 1e-10
    max_halfperiods: int = 10**6
    acceleration_depth: int = 20

    def __post_init__(self):
        if not 1e-14 <= self.abs_tol <= 1e-4:
            raise DomainError(f"abs_tol must lie in [1e-14, 1e-4], got {self.abs_tol!r}")
        if self.max_halfperiods < 100:
            raise DomainError(f"max_halfperiods must be >= 100, got {self.max_halfperiods!r}")
        if self.acceleration_depth < 1:
            raise DomainError(
                f"acceleration_depth must be >= 1, got {self.acceleration_depth!r}"
            )


@dataclass(frozen=True)
class OracleResult:
    value: float
    est_err: float
    halfperiods_used: int
    converged: bool

    def __sub__(self, other: "OracleResult") -> "OracleResult":
        return OracleResult(
            self.value - other.value,
            self.est_err + other.est_err,
            self.halfperiods_used + other.halfperiods_used,
            self.converged and other.converged,
        )


DEFAULT_CONFIG = QuadratureConfig()


# =============================================================================
# ALTERNATING SERIES
# =============================================================================


def _euler_transform(partial_sums: list[float], depth: int) -> float:
    """Average adjacent partial sums ``depth`` times over the trailing window."""
    table = partial_sums[-(depth + 1):]
    while len(table) > 1:
        table = [0.5 * (u + v) for u, v in zip(table, table[1:])]
    return table[0]


def _half_period(kappa: float, start: float, width: float, sign: float, tol: float):
    value, error = integrate.quad(
        lambda y: math.sin(kappa * y) / (y + start),
        0.0,
        width,
        epsabs=tol,
        epsrel=0.0,
        limit=200,
    )
    return sign * value, error


def _oscillatory_tail(kappa: float, theta: float, shift: float, cfg: QuadratureConfig) -> OracleResult:
    """
    Integral of sin(kappa x + theta) / (x + shift) over [0, inf), kappa > 0.

    The zeros of the sine sit at x_k = (k pi - theta) / kappa; on the
    half-period starting at x_k the integrand equals
    (-1)^k sin(kappa y) / (y + x_k + shift).
    """
    width = math.pi / kappa
    k = math.floor(theta / math.pi) + 1
    first_zero = (k * math.pi - theta) / kappa

    depth = cfg.acceleration_depth
    checkpoint = max(2 * (depth + 1), 32)
    panel_tol = cfg.abs_tol / checkpoint

    head, head_err = integrate.quad(
        lambda x: math.sin(kappa * x + theta) / (x + shift),
        0.0,
        first_zero,
        epsabs=panel_tol,
        epsrel=0.0,
        limit=200,
    )
    partial_sums = [head]
    error_sum = head_err
    previous = None
    estimate = head
    used = 0

    while True:
        while used < checkpoint:
            x_k = first_zero + used * width
            sign = -1.0 if (k + used) % 2 else 1.0
            value, error = _half_period(kappa, x_k + shift, width, sign, panel_tol)
            partial_sums.append(partial_sums[-1] + value)
            error_sum += error
            used += 1

        estimate = _euler_transform(partial_sums, depth)
        if previous is not None:
            est_err = abs(estimate - previous) + error_sum
            if abs(estimate - previous) <= 0.5 * cfg.abs_tol and est_err <= cfg.abs_tol:
                logger.debug(
                    "oscillatory tail kappa=%r theta=%r shift=%r converged after %d half-periods",
                    kappa, theta, shift, used,
                )
                return OracleResult(estimate, est_err, used, True)
        previous = estimate

        if 2 * checkpoint > cfg.max_halfperiods:
            partial = OracleResult(estimate, abs(estimate - partial_sums[-2]) + error_sum, used, False)
            raise NoConvergence(
                f"oscillatory tail did not reach {cfg.abs_tol!r} within "
                f"{cfg.max_halfperiods} half-periods",
                partial=partial,
            )
        checkpoint *= 2
        panel_tol = cfg.abs_tol / checkpoint


def _check_args(**values: float) -> None:
    for name, value in values.items():
        if not math.isfinite(value):
            raise NonFiniteInput(f"{name} must be finite, got {value!r}")


def _difference_component(m: float, a: float, phase: float, shift: float, cfg: QuadratureConfig) -> OracleResult:
    """Integral of sin((m - a) x - phase) / (x + shift), folded to a positive frequency."""
    if abs(a - m) <= ORACLE_LIGHTCONE_EPS:
        raise LightConeProximity(a, m, ORACLE_LIGHTCONE_EPS)
    if m > a:
        return _oscillatory_tail(m - a, -phase, shift, cfg)
    folded = _oscillatory_tail(a - m, phase, shift, cfg)
    return OracleResult(-folded.value, folded.est_err, folded.halfperiods_used, folded.converged)


# =============================================================================
# PUBLIC API
# =============================================================================


def quad_i1(m: float, x0: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> OracleResult:
    """Integral of sin(m x) / (x + x0) over [0, inf)."""
    _check_args(m=m, x0=x0)
    if m <= 0 or x0 <= 0:
        raise DomainError(f"quad_i1 needs m > 0 and x0 > 0, got m={m!r}, x0={x0!r}")
    return _oscillatory_tail(m, 0.0, x0, cfg)


def quad_i3(
    m: float, a: float, xd: float, xp: float, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> OracleResult:
    """
    Integral of sin(m x) cos(a (x + xp)) / (x + xd) over [0, inf), as the half-sum
    of sin((m + a) x + a xp) and sin((m - a) x - a xp) over (x + xd).
    """
    _check_args(m=m, a=a, xd=xd, xp=xp)
    if m <= 0 or a < 0 or xd <= 0 or xp <= 0:
        raise DomainError(
            f"quad_i3 needs m > 0, a >= 0, xd > 0, xp > 0; got m={m!r}, a={a!r}, xd={xd!r}, xp={xp!r}"
        )
    if abs(a - m) <= ORACLE_LIGHTCONE_EPS:
        raise LightConeProximity(a, m, ORACLE_LIGHTCONE_EPS)
    if a == 0:
        return quad_i1(m, xd, cfg)
    plus = _oscillatory_tail(m + a, a * xp, xd, cfg)
    minus = _difference_component(m, a, a * xp, xd, cfg)
    return OracleResult(
        0.5 * (plus.value + minus.value),
        0.5 * (plus.est_err + minus.est_err),
        plus.halfperiods_used + minus.halfperiods_used,
        plus.converged and minus.converged,
    )


def quad_bare_kernel(m: float, a: float, x0: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> OracleResult:
    """Integral of sin(m x) (1 - cos(a (x + x0))) / (x + x0) over [0, inf)."""
    _check_args(m=m, a=a, x0=x0)
    if m <= 0 or a < 0 or x0 <= 0:
        raise DomainError(
            f"quad_bare_kernel needs m > 0, a >= 0, x0 > 0; got m={m!r}, a={a!r}, x0={x0!r}"
        )
    if a == 0:
        return OracleResult(0.0, 0.0, 0, True)
    return quad_i1(m, x0, cfg) - quad_i3(m, a, x0, x0, cfg)
