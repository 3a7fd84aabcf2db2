"""Composite-endpoint models for two competing components.

A scenario describes two component endpoints (the first one fatal) through
their control-arm event probabilities, constant component hazard ratios,
Weibull shapes, a Spearman correlation, and a follow-up horizon. This module
calibrates the control-arm joint law so both probabilities are reproduced,
derives the treatment arm by proportional marginal hazards, and evaluates the
composite survival, hazard, and time-varying hazard ratio HR*(t).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from .copula import FrankCopula, _cdf_scalar, _partial_u_scalar
from .distributions import WeibullMarginal, calibrate_fatal_scale, proportional_marginal
from .errors import DomainError, InfeasibleCalibrationError, NumericFailure

__all__ = [
    "NumericConfig",
    "EndpointSpec",
    "ScenarioSpec",
    "JointGroupModel",
    "HrCurve",
    "composite_survival",
    "composite_hazard",
    "composite_event_probability",
    "observed_nonfatal_probability",
    "calibrate_nonfatal_scale",
    "build_scenario_models",
    "hr_limit_at_zero",
    "hr_curve",
]

RHO_MAX = 0.95


@dataclass(frozen=True)
class NumericConfig:
    """Grid and tolerance settings for curve evaluation and calibration.

    The time grid is geometric on [epsilon*tau, tau] so the near-origin
    regime, where hazards with shape < 1 diverge and extremes tend to sit,
    is resolved. zero_limit_candidate controls whether the analytic t -> 0
    hazard-ratio limit competes in the extreme search; the default keeps it.
    """

    grid_points: int = 2000
    epsilon: float = 1e-4
    ahr_weighting: str = "density"
    grid_spacing: str = "geometric"
    zero_limit_candidate: bool = True
    quad_rel_tol: float = 1e-9
    calibration_tol: float = 1e-9
    scale_floor: float = 1e-4
    refine_tol: float = 1e-8
    curve_max_points: int = 500

    def __post_init__(self):
        if self.grid_points < 16:
            raise DomainError("grid_points must be at least 16")
        if not 0.0 < self.epsilon < 1.0:
            raise DomainError("epsilon must lie in (0, 1)")
        if self.ahr_weighting not in ("density", "uniform"):
            raise DomainError("ahr_weighting must be 'density' or 'uniform'")
        if self.grid_spacing not in ("geometric", "uniform"):
            raise DomainError("grid_spacing must be 'geometric' or 'uniform'")
        if self.scale_floor <= 0.0:
            raise DomainError("scale_floor must be positive")


@dataclass(frozen=True)
class EndpointSpec:
    """One component endpoint: control event probability over the follow-up,
    constant hazard ratio, Weibull shape, and whether the event is fatal."""

    p0: float
    hr: float
    shape: float
    fatal: bool

    def __post_init__(self):
        if not (np.isfinite(self.p0) and 0.0 < self.p0 < 1.0):
            raise DomainError(f"event probability must lie in (0, 1), got {self.p0}")
        if not (np.isfinite(self.hr) and 0.0 < self.hr <= 1.0):
            raise DomainError(f"hazard ratio must lie in (0, 1], got {self.hr}")
        if not (np.isfinite(self.shape) and self.shape > 0.0):
            raise DomainError(f"shape must be positive, got {self.shape}")


@dataclass(frozen=True)
class ScenarioSpec:
    """Full design input. endpoint1 is the fatal component; rho couples the
    two component times on the Spearman scale in both arms."""

    endpoint1: EndpointSpec
    endpoint2: EndpointSpec
    rho: float
    tau: float = 1.0
    numeric: NumericConfig = field(default_factory=NumericConfig)

    def __post_init__(self):
        if not self.endpoint1.fatal:
            raise DomainError("endpoint1 must be the fatal component")
        if self.endpoint2.fatal:
            raise DomainError("endpoint2 must be non-fatal")
        if not (np.isfinite(self.rho) and 0.0 <= self.rho <= RHO_MAX):
            raise DomainError(f"rho must lie in [0, {RHO_MAX}], got {self.rho}")
        if not (np.isfinite(self.tau) and self.tau > 0.0):
            raise DomainError(f"tau must be positive, got {self.tau}")


@dataclass(frozen=True)
class JointGroupModel:
    """One arm's joint law: two Weibull marginals joined by a Frank copula.

    The composite survival is S*(t) = C(S1(t), S2(t)).
    """

    marginal1: WeibullMarginal
    marginal2: WeibullMarginal
    copula: FrankCopula


@dataclass(frozen=True)
class HrCurve:
    """HR*(t) with the per-arm composite survival and hazard it came from.

    hr_limit_at_zero is the analytic t -> 0 limit of HR*(t), which the grid
    (starting at epsilon * tau) cannot reach. hr_function re-evaluates HR* at
    arbitrary times and backs the extreme refinement; it is not part of the
    curve's value semantics.
    """

    times: np.ndarray
    hr_star: np.ndarray
    s_star_control: np.ndarray
    s_star_treatment: np.ndarray
    hazard_control: np.ndarray
    hazard_treatment: np.ndarray
    hr_limit_at_zero: float
    hr_function: Optional[Callable] = field(default=None, repr=False, compare=False)


def composite_survival(model: JointGroupModel, t):
    """P(min(T1, T2) > t) = C(S1(t), S2(t)); equals S1*S2 under independence."""
    return model.copula.cdf(model.marginal1.survival(t), model.marginal2.survival(t))


def composite_hazard(model: JointGroupModel, t):
    """Instantaneous composite rate -d log S*(t) / dt for t > 0.

    The composite density splits along which component fires first:
    dC/du * f1 + dC/dv * f2 evaluated at (S1(t), S2(t)).
    """
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0.0):
        raise DomainError("composite hazard requires t > 0")
    u = model.marginal1.survival(t)
    v = model.marginal2.survival(t)
    num = model.copula.partial_u(u, v) * model.marginal1.density(t) + model.copula.partial_v(
        u, v
    ) * model.marginal2.density(t)
    return num / model.copula.cdf(u, v)


def composite_event_probability(model: JointGroupModel, tau: float):
    """Probability of observing the composite event by tau."""
    if not (np.isfinite(tau) and tau > 0.0):
        raise DomainError(f"tau must be positive, got {tau}")
    return 1.0 - composite_survival(model, tau)


def _weibull_survival_scalar(params: tuple, t: float) -> float:
    shape, scale = params
    return math.exp(-((t / scale) ** shape))


def _weibull_density_scalar(params: tuple, t: float) -> float:
    shape, scale = params
    x = t / scale
    return (shape / scale) * x ** (shape - 1.0) * math.exp(-(x**shape))


def _composite_hazard_scalar(theta, params1: tuple, params2: tuple, t: float) -> float:
    """math-module twin of composite_hazard for t > 0; hot-loop use only."""
    u = _weibull_survival_scalar(params1, t)
    v = _weibull_survival_scalar(params2, t)
    num = _partial_u_scalar(theta, u, v) * _weibull_density_scalar(
        params1, t
    ) + _partial_u_scalar(theta, v, u) * _weibull_density_scalar(params2, t)
    return num / _cdf_scalar(theta, u, v)


def observed_nonfatal_probability(model: JointGroupModel, tau: float, rel_tol: float = 1e-9) -> float:
    """P(T2 < tau, T2 < T1): the non-fatal event is seen before the fatal one.

    Equals the integral of f2(t) * dC/dv(S1(t), S2(t)) over [0, tau]; it is
    computed after substituting v = S2(t), which removes the integrable
    density singularity that shapes below 1 put at the origin.
    """
    if not (np.isfinite(tau) and tau > 0.0):
        raise DomainError(f"tau must be positive, got {tau}")
    m1, m2 = model.marginal1, model.marginal2
    theta = model.copula.scalar_theta()
    shape1, scale1 = m1.shape, m1.scale
    scale2, inv_shape2 = m2.scale, 1.0 / m2.shape
    v_tau = float(m2.survival(tau))

    def integrand(v: float) -> float:
        t = scale2 * (-math.log(v)) ** inv_shape2
        u = math.exp(-((t / scale1) ** shape1))
        return _partial_u_scalar(theta, v, u)

    value, abserr, info = quad(
        integrand, v_tau, 1.0, epsabs=0.0, epsrel=rel_tol, limit=200, full_output=True
    )[:3]
    if abserr > max(1e-12, 100.0 * rel_tol * abs(value)):
        raise NumericFailure(
            f"nonfatal probability quadrature did not converge: value {value}, "
            f"abserr {abserr}, intervals {info['last']}"
        )
    return float(value)


def _calibrated_control(spec: ScenarioSpec) -> JointGroupModel:
    scale1 = calibrate_fatal_scale(spec.endpoint1.shape, spec.endpoint1.p0, spec.tau)
    marginal1 = WeibullMarginal(spec.endpoint1.shape, scale1)
    copula = FrankCopula.from_rho(spec.rho)
    scale2 = _solve_nonfatal_scale(
        marginal1,
        copula,
        spec.endpoint2.shape,
        spec.endpoint2.p0,
        spec.tau,
        spec.numeric,
    )
    return JointGroupModel(marginal1, WeibullMarginal(spec.endpoint2.shape, scale2), copula)


def _solve_nonfatal_scale(
    marginal1: WeibullMarginal,
    copula: FrankCopula,
    shape2: float,
    target: float,
    tau: float,
    numeric: NumericConfig,
) -> float:
    def achieved(scale: float) -> float:
        model = JointGroupModel(marginal1, WeibullMarginal(shape2, scale), copula)
        return observed_nonfatal_probability(model, tau, numeric.quad_rel_tol)

    # The marginal-only inversion overshoots the scale (competition only
    # removes events), so it brackets the root from above; expand downward.
    hi = calibrate_fatal_scale(shape2, target, tau)
    floor = numeric.scale_floor * tau
    lo = hi
    p_lo = achieved(lo)
    while p_lo < target:
        if lo <= floor:
            raise InfeasibleCalibrationError(target, p_lo, floor)
        hi = lo
        lo = max(lo / 4.0, floor)
        p_lo = achieved(lo)
    if lo == hi:
        return lo
    scale = brentq(lambda b: achieved(b) - target, lo, hi, xtol=1e-13, rtol=8.9e-16)
    if abs(achieved(scale) - target) > numeric.calibration_tol:
        raise NumericFailure(
            f"nonfatal scale calibration missed the target {target} "
            f"(achieved {achieved(scale)})"
        )
    return float(scale)


def calibrate_nonfatal_scale(spec: ScenarioSpec) -> float:
    """Control-arm scale of the non-fatal component reproducing its observed
    probability P(T2 < tau, T2 < T1) = p0. Decreasing the scale increases the
    probability, so the root is bracketed and solved monotonically; targets
    only reachable below the configured scale floor raise
    InfeasibleCalibrationError carrying the achievable supremum.
    """
    return float(_calibrated_control(spec).marginal2.scale)


def build_scenario_models(spec: ScenarioSpec) -> tuple[JointGroupModel, JointGroupModel]:
    """Calibrated (control, treatment) models for a scenario.

    The treatment arm applies each component's hazard ratio to its marginal
    law and keeps the same copula parameter: Spearman's rho is invariant
    under the monotone marginal transforms, so both arms share rho.
    """
    control = _calibrated_control(spec)
    treatment = JointGroupModel(
        proportional_marginal(control.marginal1, spec.endpoint1.hr),
        proportional_marginal(control.marginal2, spec.endpoint2.hr),
        control.copula,
    )
    return control, treatment


def hr_limit_at_zero(control: JointGroupModel, treatment: JointGroupModel) -> float:
    """Analytic limit of HR*(t) as t -> 0+.

    Near the origin the copula factors drop out and each arm's composite
    hazard behaves like c1*t**(shape1-1) + c2*t**(shape2-1) with
    c = shape/scale**shape, so the component with the smaller shape dominates;
    with equal shapes the limit is the coefficient-weighted mean.
    """
    b1, b2 = control.marginal1, control.marginal2
    t1, t2 = treatment.marginal1, treatment.marginal2
    if b1.shape != t1.shape or b2.shape != t2.shape:
        raise DomainError("arms must share component shapes")

    def coeff(m: WeibullMarginal) -> float:
        return m.shape / m.scale**m.shape

    if b1.shape < b2.shape:
        return coeff(t1) / coeff(b1)
    if b1.shape > b2.shape:
        return coeff(t2) / coeff(b2)
    return (coeff(t1) + coeff(t2)) / (coeff(b1) + coeff(b2))


def hr_curve(spec: ScenarioSpec, models: Optional[tuple[JointGroupModel, JointGroupModel]] = None) -> HrCurve:
    """Evaluate HR*(t) on the configured grid over [epsilon*tau, tau]."""
    control, treatment = models if models is not None else build_scenario_models(spec)
    cfg = spec.numeric
    spacer = np.geomspace if cfg.grid_spacing == "geometric" else np.linspace
    times = spacer(cfg.epsilon * spec.tau, spec.tau, cfg.grid_points)

    hazard_control = np.asarray(composite_hazard(control, times), dtype=float)
    hazard_treatment = np.asarray(composite_hazard(treatment, times), dtype=float)
    s_control = np.asarray(composite_survival(control, times), dtype=float)
    s_treatment = np.asarray(composite_survival(treatment, times), dtype=float)
    ratio = hazard_treatment / hazard_control

    for name, arr in (
        ("hazard ratio", ratio),
        ("control survival", s_control),
        ("treatment survival", s_treatment),
    ):
        if not np.all(np.isfinite(arr)) or np.any(arr <= 0.0):
            raise NumericFailure(f"composite {name} left (0, inf) on the grid")
    if np.any(np.diff(s_control) >= 0.0) or np.any(np.diff(s_treatment) >= 0.0):
        raise NumericFailure("composite survival is not strictly decreasing on the grid")

    theta = control.copula.scalar_theta()
    arms = tuple(
        ((m.marginal1.shape, m.marginal1.scale), (m.marginal2.shape, m.marginal2.scale))
        for m in (control, treatment)
    )

    def hr_at(t):
        if np.ndim(t) == 0:
            rates = [
                _composite_hazard_scalar(theta, pair[0], pair[1], float(t))
                for pair in arms
            ]
            return rates[1] / rates[0]
        return composite_hazard(treatment, t) / composite_hazard(control, t)

    return HrCurve(
        times=times,
        hr_star=ratio,
        s_star_control=s_control,
        s_star_treatment=s_treatment,
        hazard_control=hazard_control,
        hazard_treatment=hazard_treatment,
        hr_limit_at_zero=hr_limit_at_zero(control, treatment),
        hr_function=hr_at,
    )


def scenario_with_numeric(spec: ScenarioSpec, numeric: NumericConfig) -> ScenarioSpec:
    """Same scenario under a different numeric configuration."""
    return replace(spec, numeric=numeric)
