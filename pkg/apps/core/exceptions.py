"""
Casimir-Polder Dynamics - Error Hierarchy
=========================================
Errors raised by the numerical core and translated to exit codes by the
management commands.
"""

from __future__ import annotations

from typing import Any


class CasimirError(Exception):
    """Base class for every error raised by the numerical core."""


class NonFiniteInput(CasimirError, ValueError):
    """An argument was NaN or infinite."""


class DomainError(CasimirError, ValueError):
    """An argument lies outside the domain of the function."""


class LightConeProximity(CasimirError):
    """The evaluation point lies within the exclusion window around a = m."""

    def __init__(self, a: float, m: float, eps: float):
        self.a = a
        self.m = m
        self.eps = eps
        super().__init__(
            f"a={a!r} is within {eps!r} of the light cone at m={m!r}"
        )


class NoConvergence(CasimirError):
    """An iterative procedure ran out of budget before reaching its tolerance."""

    def __init__(self, message: str, partial: Any = None):
        self.partial = partial
        super().__init__(message)


class InsufficientData(CasimirError):
    """A trace is too short to analyse."""


class StaticForceVanishes(CasimirError, ZeroDivisionError):
    """The static (dressed) force is zero, so a relative difference is undefined."""
