"""
Casimir-Polder Dynamics - Energies & Forces
===========================================
Atom-wall interaction energy of a two-level atom in front of a perfectly
conducting plate for three initial states after the atomic transition
frequency is switched from w0' = c k0' to w0 = c k0:

- dressed:  stationary, fully dressed ground state at the new frequency
- bare:     bare ground state, time-dependent
- partial:  state dressed at the old frequency, time-dependent

Forces are minus the distance derivative of the energies at fixed t.
"""

import logging
import math
from dataclasses import dataclass

from django.db import models

from apps.core.exceptions import DomainError, LightConeProximity, NonFiniteInput, StaticForceVanishes

from .kernels import LIGHTCONE_EPS, DimensionlessArgs, MJet, apply_dm, i1_jet, i3_jet

logger = logging.getLogger(__name__)

FORCE_STEP = 1e-5


# =============================================================================
# CHOICES
# =============================================================================


class StateKind(models.TextChoices):
    DRESSED = "dressed", "Dressed"
    BARE = "bare", "Bare"
    PARTIAL = "partial", "Partially dressed"


# =============================================================================
# DATA CLASSES
# =============================================================================


def _require_positive(**values: float) -> None:
    for name, value in values.items():
        if not math.isfinite(value):
            raise NonFiniteInput(f"{name} must be finite, got {value!r}")
        if value <= 0:
            raise DomainError(f"{name} must be > 0, got {value!r}")


@dataclass(frozen=True)
class PhysicalParams:
    """
    Atom and field parameters.

    mu is the transition dipole magnitude, k0 the wavenumber after the
    switch, k0p the wavenumber before it and c the speed of light.
    """

    k0: float
    k0p: float
    mu: float = 1.0
    c: float = 1.0

    def __post_init__(self):
        _require_positive(k0=self.k0, k0p=self.k0p, mu=self.mu, c=self.c)


@dataclass(frozen=True)
class EvalPoint:
    """Atom-wall distance d and time t since the frequency switch."""

    d: float
    t: float = 0.0

    def __post_init__(self):
        _require_positive(d=self.d)
        if not math.isfinite(self.t):
            raise NonFiniteInput(f"t must be finite, got {self.t!r}")
        if self.t < 0:
            raise DomainError(f"t must be >= 0, got {self.t!r}")


@dataclass(frozen=True)
class EnergyTriple:
    """Energies of the three states at one point; bare/partial are NaN on the light cone."""

    e_dressed: float
    e_bare: float
    e_partial: float
    on_lightcone: bool
    a: float


# =============================================================================
# REDUCED VARIABLES
# =============================================================================


def dimensionless_args(p: PhysicalParams, pt: EvalPoint) -> DimensionlessArgs:
    """a = c t / (2 d), x0 = 2 k0 d, x0' = 2 k0' d."""
    return DimensionlessArgs(
        a=p.c * pt.t / (2.0 * pt.d),
        x0=2.0 * p.k0 * pt.d,
        x0p=2.0 * p.k0p * pt.d,
    )


def back_reaction_time(d: float, c: float = 1.0) -> float:
    """Time a signal needs to reach the wall and return to the atom."""
    _require_positive(d=d, c=c)
    return 2.0 * d / c


# =============================================================================
# ENERGIES
# =============================================================================


def energy_dressed(p: PhysicalParams, d: float) -> float:
    _require_positive(d=d)
    return apply_dm(i1_jet(1.0, 2.0 * p.k0 * d), p.mu, d)


def _lightcone_jet(args: DimensionlessArgs, xd: float, lightcone_eps: float) -> MJet:
    return i3_jet(args.m, args.a, xd, args.x0, lightcone_eps=lightcone_eps)


def energy_bare(p: PhysicalParams, pt: EvalPoint, lightcone_eps: float = LIGHTCONE_EPS) -> float:
    """Bare-state energy; exactly zero at t = 0."""
    args = dimensionless_args(p, pt)
    if args.a == 0:
        return 0.0
    jet = i1_jet(args.m, args.x0) - _lightcone_jet(args, args.x0, lightcone_eps)
    return apply_dm(jet, p.mu, pt.d)


def energy_partial(p: PhysicalParams, pt: EvalPoint, lightcone_eps: float = LIGHTCONE_EPS) -> float:
    """Partially dressed energy; reduces to energy_dressed when k0p == k0."""
    args = dimensionless_args(p, pt)
    correction = _lightcone_jet(args, args.x0p, lightcone_eps) - _lightcone_jet(
        args, args.x0, lightcone_eps
    )
    return apply_dm(i1_jet(args.m, args.x0) + correction, p.mu, pt.d)


def energy(
    kind: str, p: PhysicalParams, pt: EvalPoint, lightcone_eps: float = LIGHTCONE_EPS
) -> float:
    if kind == StateKind.DRESSED:
        return energy_dressed(p, pt.d)
    if kind == StateKind.BARE:
        return energy_bare(p, pt, lightcone_eps)
    if kind == StateKind.PARTIAL:
        return energy_partial(p, pt, lightcone_eps)
    raise DomainError(f"unknown state kind {kind!r}")


def energies(p: PhysicalParams, pt: EvalPoint, lightcone_eps: float = LIGHTCONE_EPS) -> EnergyTriple:
    a = dimensionless_args(p, pt).a
    e_dressed = energy_dressed(p, pt.d)
    try:
        e_bare = energy_bare(p, pt, lightcone_eps)
        e_partial = energy_partial(p, pt, lightcone_eps)
    except LightConeProximity:
        return EnergyTriple(e_dressed, math.nan, math.nan, True, a)
    return EnergyTriple(e_dressed, e_bare, e_partial, False, a)


# =============================================================================
# STATIC LIMITS
# =============================================================================


def near_zone_energy(p: PhysicalParams, d: float) -> float:
    """Static energy for k0 d << 1."""
    _require_positive(d=d)
    return -(p.mu**2) / (12.0 * d**3)


def far_zone_energy(p: PhysicalParams, d: float) -> float:
    """Static energy for k0 d >> 1."""
    _require_positive(d=d)
    return -(p.mu**2) / (4.0 * math.pi * p.k0 * d**4)


def near_zone_force(p: PhysicalParams, d: float) -> float:
    _require_positive(d=d)
    return -(p.mu**2) / (4.0 * d**4)


def far_zone_force(p: PhysicalParams, d: float) -> float:
    _require_positive(d=d)
    return -(p.mu**2) / (math.pi * p.k0 * d**5)


# =============================================================================
# FORCES
# =============================================================================


def _stencil_guard(p: PhysicalParams, pt: EvalPoint, span: float, lightcone_eps: float) -> None:
    """Refuse stencils that touch the exclusion window or straddle a = 1."""
    if pt.t == 0:
        return
    a_near = p.c * pt.t / (2.0 * (pt.d - span))
    a_far = p.c * pt.t / (2.0 * (pt.d + span))
    for a in (a_near, a_far):
        if abs(a - 1.0) <= lightcone_eps:
            raise LightConeProximity(a, 1.0, lightcone_eps)
    if (a_near - 1.0) * (a_far - 1.0) < 0:
        raise LightConeProximity(0.5 * (a_near + a_far), 1.0, lightcone_eps)


def _five_point_derivative(f, d: float, h: float) -> float:
    return (f(d - 2.0 * h) - 8.0 * f(d - h) + 8.0 * f(d + h) - f(d + 2.0 * h)) / (12.0 * h)


def force(
    kind: str, p: PhysicalParams, pt: EvalPoint, lightcone_eps: float = LIGHTCONE_EPS
) -> float:
    """
    -dE/dd at fixed t.

    Five-point central differences with steps h = 1e-5 d and h/2, combined by
    one Richardson level: (16 D(h/2) - D(h)) / 15.
    """
    h = FORCE_STEP * pt.d
    if kind != StateKind.DRESSED:
        _stencil_guard(p, pt, 2.0 * h, lightcone_eps)

    def curve(d: float) -> float:
        return energy(kind, p, EvalPoint(d=d, t=pt.t), lightcone_eps)

    coarse = _five_point_derivative(curve, pt.d, h)
    fine = _five_point_derivative(curve, pt.d, 0.5 * h)
    return -(16.0 * fine - coarse) / 15.0


def relative_force_difference(
    p: PhysicalParams, pt: EvalPoint, lightcone_eps: float = LIGHTCONE_EPS
) -> float:
    """(F_partial - F_dressed) / F_dressed."""
    static = force(StateKind.DRESSED, p, pt, lightcone_eps)
    if static == 0:
        raise StaticForceVanishes(f"static force vanishes at d={pt.d!r}")
    return (force(StateKind.PARTIAL, p, pt, lightcone_eps) - static) / static


def relative_difference(partial: float, dressed: float, d: float) -> float:
    """Relative difference from forces already evaluated at the same point."""
    if dressed == 0:
        raise StaticForceVanishes(f"static force vanishes at d={d!r}")
    return (partial - dressed) / dressed
