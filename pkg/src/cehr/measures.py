"""Summary measures of non-proportionality and event/sample-size arithmetic.

From an HR*(t) curve this module extracts the extreme values (mHR*, MHR*),
an average value aHR* under a density- or uniform-in-time weighting, the
absolute spread D = MHR* - mHR*, and the relative measure
R = (log aHR* / log MHR*)**2, which equals the ratio between the sample size
required to detect the minimum detectable effect MHR* and the one required
for the average effect aHR*.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .composite import HrCurve, JointGroupModel, composite_event_probability
from .errors import DomainError

__all__ = [
    "NphSummary",
    "normal_upper_quantile",
    "extremes",
    "average_hr",
    "d_measure",
    "r_measure",
    "events_required",
    "events_required_exact",
    "sample_size",
    "sample_size_exact",
    "summarize",
]

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class NphSummary:
    """Scenario summary: extremes and average of HR*(t), the D and R
    indicators, composite event probabilities per arm, and the event counts
    and sample sizes implied by the average and the minimum detectable
    effect. nph_flag marks R strictly above the chosen threshold.

    Effect-based fields are None when the corresponding ratio reaches 1
    (no detectable effect, e.g. both component hazard ratios equal to 1)."""

    m_hr: float
    M_hr: float
    a_hr: float
    d: float
    r: Optional[float]
    p_star_control: float
    p_star_treatment: float
    events_a: Optional[int]
    events_M: Optional[int]
    n_a: Optional[int]
    n_M: Optional[int]
    nph_flag: bool
    weighting: str


def normal_upper_quantile(p: float) -> float:
    """z with P(Z > z) = p for a standard normal.

    Classic rational approximation (Hastings); its small bias is part of the
    published event-count convention this package reproduces, so swapping in
    a higher-precision quantile would change the contracted integer outputs.
    """
    if not (np.isfinite(p) and 0.0 < p < 1.0):
        raise DomainError(f"tail probability must lie in (0, 1), got {p}")
    if p > 0.5:
        return -normal_upper_quantile(1.0 - p)
    t = math.sqrt(-2.0 * math.log(p))
    num = 2.515517 + t * (0.802853 + t * 0.010328)
    den = 1.0 + t * (1.432788 + t * (0.189269 + t * 0.001308))
    return t - num / den


def _golden_min(f, lo: float, hi: float, tol: float) -> float:
    """Golden-section minimum of a unimodal f on [lo, hi] to width tol."""
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while (b - a) > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def extremes(curve: HrCurve, include_zero_limit: bool = True) -> tuple[float, float]:
    """Global (min, max) of HR*(t) over the follow-up.

    Grid scan plus golden-section refinement around the best grid points;
    the analytic t -> 0 limit competes as a candidate unless disabled, since
    the grid starts strictly after the origin.
    """
    values = curve.hr_star
    if values.size == 0:
        raise DomainError("cannot take extremes of an empty curve")
    times = curve.times
    tol = 1e-8 * times[-1]

    def refine(transform) -> float:
        idx = int(np.argmin(transform(values)))
        best = float(values[idx])
        if curve.hr_function is None:
            return best
        lo = times[max(idx - 1, 0)]
        hi = times[min(idx + 1, len(times) - 1)]
        if hi <= lo:
            return best
        t_star = _golden_min(lambda t: float(transform(curve.hr_function(t))), lo, hi, tol)
        return float(curve.hr_function(t_star))

    candidates_min = [refine(lambda x: x), float(values.min())]
    candidates_max = [refine(lambda x: -x), float(values.max())]
    if include_zero_limit:
        candidates_min.append(curve.hr_limit_at_zero)
        candidates_max.append(curve.hr_limit_at_zero)
    return min(candidates_min), max(candidates_max)


def average_hr(curve: HrCurve, weighting: str = "density") -> float:
    """Average of HR*(t) over [0, tau].

    "density" weights by the control-arm composite event density, "uniform"
    by time. Both use the composite trapezoid rule on the curve grid plus an
    analytic segment for [0, epsilon*tau], where HR* is taken at its t -> 0
    limit, so a constant curve averages to that constant exactly.
    """
    t = curve.times
    hr = curve.hr_star
    lim = curve.hr_limit_at_zero
    if weighting == "uniform":
        return float((np.trapezoid(hr, t) + lim * t[0]) / t[-1])
    if weighting == "density":
        f0 = curve.hazard_control * curve.s_star_control
        head = 1.0 - curve.s_star_control[0]
        num = np.trapezoid(hr * f0, t) + lim * head
        den = np.trapezoid(f0, t) + head
        return float(num / den)
    raise DomainError(f"unknown weighting {weighting!r}")


def d_measure(m_hr: float, M_hr: float) -> float:
    """Absolute spread MHR* - mHR* of the hazard ratio over follow-up."""
    if not (np.isfinite(m_hr) and np.isfinite(M_hr)) or m_hr > M_hr:
        raise DomainError(f"need m_hr <= M_hr, got ({m_hr}, {M_hr})")
    return M_hr - m_hr


def r_measure(a_hr: float, M_hr: float) -> float:
    """(log aHR* / log MHR*)**2: the sample-size ratio n_MHR / n_aHR.

    Requires an actual effect, MHR* < 1. A tiny floating-point overshoot of
    a_hr above M_hr (a flat curve averaged through quadrature) collapses to
    R = 1; anything larger violates a_hr <= M_hr and is rejected.
    """
    if not (np.isfinite(a_hr) and np.isfinite(M_hr)) or a_hr <= 0.0:
        raise DomainError(f"need finite positive ratios, got ({a_hr}, {M_hr})")
    if M_hr >= 1.0:
        raise DomainError(
            f"minimum detectable effect is not an effect: MHR* = {M_hr} >= 1"
        )
    if a_hr > M_hr:
        if a_hr <= M_hr * (1.0 + 1e-9):
            return 1.0
        raise DomainError(f"average {a_hr} exceeds maximum {M_hr}")
    return (math.log(a_hr) / math.log(M_hr)) ** 2


def _check_test_params(h: float, alpha: float, power: float):
    if not (np.isfinite(h) and 0.0 < h < 1.0):
        raise DomainError(f"effect size must lie in (0, 1), got {h}")
    if not (np.isfinite(alpha) and 0.0 < alpha < 0.5):
        raise DomainError(f"one-sided alpha must lie in (0, 0.5), got {alpha}")
    if not (np.isfinite(power) and 0.5 < power < 1.0):
        raise DomainError(f"power must lie in (0.5, 1), got {power}")


def events_required_exact(h: float, alpha: float, power: float) -> float:
    """Unrounded required events 4*(z_alpha + z_beta)**2 / log(h)**2."""
    _check_test_params(h, alpha, power)
    z = normal_upper_quantile(alpha) + normal_upper_quantile(1.0 - power)
    return 4.0 * z * z / math.log(h) ** 2


def events_required(h: float, alpha: float, power: float) -> int:
    """Required event count, rounded up to the next integer."""
    return math.ceil(events_required_exact(h, alpha, power))


def sample_size_exact(h: float, alpha: float, power: float, p_control: float, p_treatment: float) -> float:
    """Unrounded sample size 2*e_h / (p_control + p_treatment)."""
    for name, p in (("p_control", p_control), ("p_treatment", p_treatment)):
        if not (np.isfinite(p) and 0.0 < p <= 1.0):
            raise DomainError(f"{name} must lie in (0, 1], got {p}")
    return 2.0 * events_required_exact(h, alpha, power) / (p_control + p_treatment)


def sample_size(h: float, alpha: float, power: float, p_control: float, p_treatment: float) -> int:
    """Total sample size, ceiling applied after the exact ratio."""
    return math.ceil(sample_size_exact(h, alpha, power, p_control, p_treatment))


def summarize(
    curve: HrCurve,
    control: JointGroupModel,
    treatment: JointGroupModel,
    tau: float,
    alpha: float = 0.05,
    power: float = 0.8,
    threshold: float = 1.25,
    weighting: str = "density",
    include_zero_limit: bool = True,
) -> NphSummary:
    """Assemble the non-proportionality summary for one scenario.

    Quantities that require an actual effect degrade to None instead of
    failing when the average or maximum hazard ratio reaches 1, so the
    no-effect boundary (both component ratios 1) still summarizes."""
    m_hr, M_hr = extremes(curve, include_zero_limit=include_zero_limit)
    a_hr = average_hr(curve, weighting)
    p0 = float(composite_event_probability(control, tau))
    p1 = float(composite_event_probability(treatment, tau))
    a_effect = a_hr < 1.0
    M_effect = M_hr < 1.0
    r = r_measure(a_hr, M_hr) if (a_effect and M_effect) else None
    return NphSummary(
        m_hr=m_hr,
        M_hr=M_hr,
        a_hr=a_hr,
        d=d_measure(m_hr, M_hr),
        r=r,
        p_star_control=p0,
        p_star_treatment=p1,
        events_a=events_required(a_hr, alpha, power) if a_effect else None,
        events_M=events_required(M_hr, alpha, power) if M_effect else None,
        n_a=sample_size(a_hr, alpha, power, p0, p1) if a_effect else None,
        n_M=sample_size(M_hr, alpha, power, p0, p1) if M_effect else None,
        nph_flag=bool(r is not None and r > threshold),
        weighting=weighting,
    )
