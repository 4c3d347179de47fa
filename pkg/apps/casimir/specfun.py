"""
Casimir-Polder Dynamics - Sine and Cosine Integrals
===================================================
Si(x) and Ci(x) for real arguments, with a rigorous absolute error bound
and first/second derivatives.

Two regimes:
- |x| <= X_SWITCH: Maclaurin series, summed until the alternating tail is
  below half an ulp of the partial sum.
- x > X_SWITCH: auxiliary functions f, g from the continued fraction of
  E1(ix), evaluated with the modified Lentz algorithm.

Si is odd; Ci is only defined for x > 0.
"""

import logging
import math
import sys
from dataclasses import dataclass
from typing import NamedTuple

from apps.core.exceptions import DomainError, NoConvergence, NonFiniteInput

logger = logging.getLogger(__name__)

EULER_GAMMA = 0.57721566490153286061
HALF_PI = 0.5 * math.pi
X_SWITCH = 4.0

_EPS = sys.float_info.epsilon
_FPMIN = sys.float_info.min / _EPS
_MAX_SERIES_TERMS = 200
_MAX_CF_TERMS = 10_000
_CF_TOL = 4.0 * _EPS


# =============================================================================
# DATA CLASSES
# =============================================================================


@dataclass(frozen=True)
class SpecFunValue:
    """A function value together with a bound on its absolute error."""

    value: float
    abs_err_bound: float


class SpecFunJet(NamedTuple):
    """Value and first two derivatives with respect to the argument."""

    value: float
    d1: float
    d2: float


# =============================================================================
# REGIME KERNELS
# =============================================================================


def _check_finite(x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise NonFiniteInput(f"argument must be finite, got {x!r}")
    return x


def _si_ci_series(x: float) -> tuple[SpecFunValue, SpecFunValue]:
    """Maclaurin series for Si(x) and Ci(x) at 0 < x <= X_SWITCH."""
    x2 = x * x

    # Si = sum (-1)^k x^(2k+1) / ((2k+1) (2k+1)!)
    term = x
    si_sum = x
    si_abs = abs(x)
    si_tail = 0.0
    for k in range(1, _MAX_SERIES_TERMS):
        term *= -x2 / ((2 * k) * (2 * k + 1))
        contribution = term / (2 * k + 1)
        if abs(contribution) <= 0.5 * _EPS * abs(si_sum):
            si_tail = abs(contribution)
            break
        si_sum += contribution
        si_abs += abs(contribution)
    else:
        raise NoConvergence(f"Si series did not converge at x={x!r}")

    # Ci = gamma + ln x + sum_{k>=1} (-1)^k x^(2k) / (2k (2k)!)
    term = 1.0
    ci_sum = 0.0
    ci_abs = 0.0
    ci_tail = 0.0
    for k in range(1, _MAX_SERIES_TERMS):
        term *= -x2 / ((2 * k - 1) * (2 * k))
        contribution = term / (2 * k)
        if ci_sum != 0.0 and abs(contribution) <= 0.5 * _EPS * abs(ci_sum):
            ci_tail = abs(contribution)
            break
        if contribution == 0.0:
            break
        ci_sum += contribution
        ci_abs += abs(contribution)
    else:
        raise NoConvergence(f"Ci series did not converge at x={x!r}")

    log_x = math.log(x)
    ci_value = math.fsum((EULER_GAMMA, log_x, ci_sum))

    si_bound = si_tail + 2.0 * _EPS * si_abs + 0.5 * math.ulp(si_sum)
    ci_bound = (
        ci_tail
        + 2.0 * _EPS * ci_abs
        + math.ulp(log_x)
        + 0.5 * math.ulp(ci_value)
        + 0.5 * math.ulp(EULER_GAMMA)
    )
    return SpecFunValue(si_sum, si_bound), SpecFunValue(ci_value, ci_bound)


def _auxiliary_continued_fraction(x: float) -> tuple[float, float, int]:
    """
    Auxiliary functions (f, g) for x > 0 from E1(ix) e^(ix) = g - i f, and
    the number of Lentz steps taken.

    The continued fraction converges for every x > 0 but needs many terms
    below X_SWITCH.
    """
    b = complex(1.0, x)
    c = complex(1.0 / _FPMIN, 0.0)
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_CF_TERMS):
        an = -float(i * i)
        b += 2.0
        d = an * d + b
        if d == 0:
            d = complex(_FPMIN, 0.0)
        c = b + an / c
        if c == 0:
            c = complex(_FPMIN, 0.0)
        d = 1.0 / d
        delta = c * d
        h *= delta
        if abs(delta.real - 1.0) + abs(delta.imag) <= _CF_TOL:
            logger.debug("E1(ix) continued fraction at x=%r: %d terms", x, i)
            break
    else:
        raise NoConvergence(f"E1(ix) continued fraction did not converge at x={x!r}")
    return -h.imag, h.real, i


def _si_ci_continued_fraction(x: float) -> tuple[SpecFunValue, SpecFunValue]:
    """Si(x) and Ci(x) for x > 0 via the auxiliary functions."""
    f, g, terms = _auxiliary_continued_fraction(x)
    cos_x = math.cos(x)
    sin_x = math.sin(x)
    si_value = HALF_PI - f * cos_x - g * sin_x
    ci_value = f * sin_x - g * cos_x
    magnitude = abs(f) + abs(g)
    # f, g: stopping tolerance twice over plus roundoff of each Lentz step;
    # then one ulp each from sin, cos and the two products
    fg_err = magnitude * (2.0 * _CF_TOL + (2 * terms + 4) * _EPS)
    si_bound = fg_err + _EPS * HALF_PI + 0.5 * math.ulp(si_value)
    ci_bound = fg_err + 0.5 * math.ulp(ci_value)
    return SpecFunValue(si_value, si_bound), SpecFunValue(ci_value, ci_bound)


def _si_ci(x: float) -> tuple[SpecFunValue, SpecFunValue]:
    if x <= X_SWITCH:
        return _si_ci_series(x)
    return _si_ci_continued_fraction(x)


# =============================================================================
# PUBLIC API
# =============================================================================


def si(x: float) -> SpecFunValue:
    """Sine integral Si(x) = integral of sin(t)/t over [0, x]."""
    x = _check_finite(x)
    if x == 0.0:
        return SpecFunValue(0.0, 0.0)
    sine, _ = _si_ci(abs(x))
    if x < 0:
        return SpecFunValue(-sine.value, sine.abs_err_bound)
    return sine


def ci(x: float) -> SpecFunValue:
    """Cosine integral Ci(x) = gamma + ln x + integral of (cos t - 1)/t over [0, x]."""
    x = _check_finite(x)
    if x <= 0.0:
        raise DomainError(f"Ci is defined for x > 0, got {x!r}")
    _, cosine = _si_ci(x)
    return cosine


def aux_fg(x: float) -> tuple[float, float]:
    """
    Auxiliary functions f(x) and g(x) for x > 0:

        f = Ci(x) sin x + (pi/2 - Si(x)) cos x
        g = -Ci(x) cos x + (pi/2 - Si(x)) sin x
    """
    x = _check_finite(x)
    if x <= 0.0:
        raise DomainError(f"auxiliary functions are defined for x > 0, got {x!r}")
    if x > X_SWITCH:
        f, g, _ = _auxiliary_continued_fraction(x)
        return f, g
    sine, cosine = _si_ci_series(x)
    rest = HALF_PI - sine.value
    cos_x = math.cos(x)
    sin_x = math.sin(x)
    return (
        cosine.value * sin_x + rest * cos_x,
        -cosine.value * cos_x + rest * sin_x,
    )


def si_jet(x: float) -> SpecFunJet:
    """Si(x), sin(x)/x and (x cos x - sin x)/x^2."""
    value = si(x).value
    if x == 0.0:
        return SpecFunJet(0.0, 1.0, 0.0)
    if abs(x) < 0.1:
        x2 = x * x
        d1 = 1.0 - x2 / 6.0 + x2 * x2 / 120.0 - x2 * x2 * x2 / 5040.0 + x2**4 / 362880.0
        d2 = x * (-1.0 / 3.0 + x2 / 30.0 - x2 * x2 / 840.0 + x2 * x2 * x2 / 45360.0)
        return SpecFunJet(value, d1, d2)
    sin_x = math.sin(x)
    cos_x = math.cos(x)
    return SpecFunJet(value, sin_x / x, (x * cos_x - sin_x) / (x * x))


def ci_jet(x: float) -> SpecFunJet:
    """Ci(x), cos(x)/x and -(x sin x + cos x)/x^2."""
    value = ci(x).value
    sin_x = math.sin(x)
    cos_x = math.cos(x)
    return SpecFunJet(value, cos_x / x, -(x * sin_x + cos_x) / (x * x))
