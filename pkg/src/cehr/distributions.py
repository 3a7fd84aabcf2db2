"""Weibull time-to-event laws and proportional-hazards transforms.

All operations accept scalars or numpy arrays and are pure; marginals are
immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = ["WeibullMarginal", "calibrate_fatal_scale", "proportional_marginal"]


def _as_time(t, allow_zero: bool = True):
    t = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(t)):
        raise DomainError("time values must be finite")
    if allow_zero:
        if np.any(t < 0.0):
            raise DomainError("time values must be nonnegative")
    elif np.any(t <= 0.0):
        raise DomainError("time values must be positive")
    return t


@dataclass(frozen=True)
class WeibullMarginal:
    """Weibull law with survival S(t) = exp(-(t/scale)**shape).

    shape is dimensionless; scale carries the time unit. shape == 1 is the
    exponential special case with constant hazard 1/scale.
    """

    shape: float
    scale: float

    def __post_init__(self):
        if not (np.isfinite(self.shape) and self.shape > 0.0):
            raise DomainError(f"shape must be positive and finite, got {self.shape}")
        if not (np.isfinite(self.scale) and self.scale > 0.0):
            raise DomainError(f"scale must be positive and finite, got {self.scale}")

    def survival(self, t):
        t = _as_time(t)
        return np.exp(-np.power(t / self.scale, self.shape))

    def hazard(self, t):
        """Instantaneous rate (shape/scale)*(t/scale)**(shape-1).

        At t == 0 the rate diverges for shape < 1; a +inf sentinel is
        returned so grid-based consumers stay branch-free.
        """
        t = _as_time(t)
        with np.errstate(divide="ignore"):
            return (self.shape / self.scale) * np.power(t / self.scale, self.shape - 1.0)

    def density(self, t):
        t = _as_time(t)
        with np.errstate(divide="ignore"):
            rate = (self.shape / self.scale) * np.power(t / self.scale, self.shape - 1.0)
        return rate * np.exp(-np.power(t / self.scale, self.shape))

    def inverse_survival(self, s):
        """Time t with survival(t) == s, for s in (0, 1]."""
        s = np.asarray(s, dtype=float)
        if np.any(s <= 0.0) or np.any(s > 1.0):
            raise DomainError("survival values must lie in (0, 1]")
        return self.scale * np.power(-np.log(s), 1.0 / self.shape)


def calibrate_fatal_scale(shape: float, p: float, tau: float) -> float:
    """Scale for which the event probability over [0, tau] equals p.

    Closed-form inversion of 1 - S(tau) = p; the returned scale satisfies
    the constraint exactly up to floating point.
    """
    if not (np.isfinite(p) and 0.0 < p < 1.0):
        raise DomainError(f"event probability must lie in (0, 1), got {p}")
    if not (np.isfinite(tau) and tau > 0.0):
        raise DomainError(f"follow-up tau must be positive, got {tau}")
    if not (np.isfinite(shape) and shape > 0.0):
        raise DomainError(f"shape must be positive, got {shape}")
    return tau / (-np.log1p(-p)) ** (1.0 / shape)


def proportional_marginal(m: WeibullMarginal, hr: float) -> WeibullMarginal:
    """Marginal whose hazard is hr times the hazard of m at every t.

    Equivalent to raising the survival function to the power hr, which for
    a Weibull keeps the shape and rescales by hr**(-1/shape).
    """
    if not (np.isfinite(hr) and 0.0 < hr <= 1.0):
        raise DomainError(f"hazard ratio must lie in (0, 1], got {hr}")
    if hr == 1.0:
        return m
    return WeibullMarginal(m.shape, m.scale * hr ** (-1.0 / m.shape))
