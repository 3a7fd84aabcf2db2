"""Numerical engine for the time-varying hazard ratio of two-component
composite time-to-event endpoints: Weibull marginals joined by a Frank
copula, competing-risks calibration, non-proportionality indicators D and R,
event/sample-size arithmetic, and scenario-grid sweeps."""

__version__ = "0.1.0"

from .composite import (
    EndpointSpec,
    HrCurve,
    JointGroupModel,
    NumericConfig,
    ScenarioSpec,
    build_scenario_models,
    calibrate_nonfatal_scale,
    composite_event_probability,
    composite_hazard,
    composite_survival,
    hr_curve,
    hr_limit_at_zero,
    observed_nonfatal_probability,
)
from .copula import FrankCopula, debye, spearman_rho, theta_from_rho
from .distributions import WeibullMarginal, calibrate_fatal_scale, proportional_marginal
from .errors import DomainError, InfeasibleCalibrationError, NumericFailure
from .measures import (
    NphSummary,
    average_hr,
    d_measure,
    events_required,
    events_required_exact,
    extremes,
    normal_upper_quantile,
    r_measure,
    sample_size,
    sample_size_exact,
    summarize,
)
from .sweep import (
    FactorLevel,
    FlagCell,
    GridSpec,
    SweepRow,
    enumerate_scenarios,
    evaluate_scenario,
    flag_distribution,
    rows_to_csv,
    run_sweep,
    summarize_by_factor,
    write_csv,
)

__all__ = [
    "__version__",
    "DomainError",
    "InfeasibleCalibrationError",
    "NumericFailure",
    "WeibullMarginal",
    "calibrate_fatal_scale",
    "proportional_marginal",
    "FrankCopula",
    "debye",
    "spearman_rho",
    "theta_from_rho",
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
    "GridSpec",
    "SweepRow",
    "FactorLevel",
    "FlagCell",
    "enumerate_scenarios",
    "evaluate_scenario",
    "run_sweep",
    "rows_to_csv",
    "write_csv",
    "summarize_by_factor",
    "flag_distribution",
]
