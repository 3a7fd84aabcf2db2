"""Scenario-grid sweeps with deterministic, parallel-safe evaluation.

The default grid crosses three event probabilities per component, four
hazard ratios per component, three correlations, and three Weibull shapes
per component (3888 scenarios). Each scenario is evaluated independently;
results merge in enumeration order, so serial and parallel runs produce
byte-identical CSV output.
"""

from __future__ import annotations

import io
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields
from itertools import product
from typing import Optional, Sequence

import numpy as np

from .composite import (
    EndpointSpec,
    NumericConfig,
    ScenarioSpec,
    build_scenario_models,
    composite_event_probability,
    hr_curve,
)
from .errors import DomainError, InfeasibleCalibrationError
from .measures import average_hr, d_measure, extremes, r_measure, sample_size

__all__ = [
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

CSV_COLUMNS = (
    "p1,p2,hr1,hr2,rho,beta1,beta2,m_hr,M_hr,a_hr_density,a_hr_uniform,D,"
    "R_density,R_uniform,p_star_control,p_star_treatment,n_a,n_M,nph_flag,status"
)

FACTORS = ("hr_diff", "shape_pattern", "rho", "global")


@dataclass(frozen=True)
class GridSpec:
    """Cartesian scenario grid plus the test parameters applied to each cell."""

    p_values: tuple = (0.1, 0.3, 0.5)
    hr_values: tuple = (0.6, 0.7, 0.8, 0.9)
    rho_values: tuple = (0.1, 0.3, 0.5)
    shape_values: tuple = (0.5, 1.0, 2.0)
    tau: float = 1.0
    alpha: float = 0.05
    power: float = 0.8
    threshold: float = 1.25
    numeric: NumericConfig = field(default_factory=NumericConfig)

    def __post_init__(self):
        for name in ("p_values", "hr_values", "rho_values", "shape_values"):
            values = tuple(float(v) for v in getattr(self, name))
            if not values:
                raise DomainError(f"{name} must not be empty")
            object.__setattr__(self, name, values)
        if not self.tau > 0.0:
            raise DomainError("tau must be positive")

    @property
    def size(self) -> int:
        return (
            len(self.p_values) ** 2
            * len(self.hr_values) ** 2
            * len(self.rho_values)
            * len(self.shape_values) ** 2
        )


@dataclass(frozen=True)
class SweepRow:
    """One evaluated scenario; numeric fields are None when status is not ok."""

    p1: float
    p2: float
    hr1: float
    hr2: float
    rho: float
    beta1: float
    beta2: float
    m_hr: Optional[float] = None
    M_hr: Optional[float] = None
    a_hr_density: Optional[float] = None
    a_hr_uniform: Optional[float] = None
    d: Optional[float] = None
    r_density: Optional[float] = None
    r_uniform: Optional[float] = None
    p_star_control: Optional[float] = None
    p_star_treatment: Optional[float] = None
    n_a: Optional[int] = None
    n_M: Optional[int] = None
    nph_flag: Optional[bool] = None
    status: str = "ok"

    def r(self, weighting: str = "density") -> Optional[float]:
        if weighting == "density":
            return self.r_density
        if weighting == "uniform":
            return self.r_uniform
        raise DomainError(f"unknown weighting {weighting!r}")


def enumerate_scenarios(grid: GridSpec) -> list[ScenarioSpec]:
    """All grid scenarios in lexicographic (p1, p2, hr1, hr2, rho, beta1, beta2)
    order; calling twice yields the identical sequence."""
    scenarios = []
    for p1, p2, h1, h2, rho, b1, b2 in product(
        grid.p_values,
        grid.p_values,
        grid.hr_values,
        grid.hr_values,
        grid.rho_values,
        grid.shape_values,
        grid.shape_values,
    ):
        scenarios.append(
            ScenarioSpec(
                endpoint1=EndpointSpec(p0=p1, hr=h1, shape=b1, fatal=True),
                endpoint2=EndpointSpec(p0=p2, hr=h2, shape=b2, fatal=False),
                rho=rho,
                tau=grid.tau,
                numeric=grid.numeric,
            )
        )
    return scenarios


def evaluate_scenario(
    spec: ScenarioSpec, alpha: float = 0.05, power: float = 0.8, threshold: float = 1.25
) -> SweepRow:
    """Evaluate one scenario into a sweep row; infeasible calibrations are
    captured in the row status instead of raising."""
    coords = dict(
        p1=spec.endpoint1.p0,
        p2=spec.endpoint2.p0,
        hr1=spec.endpoint1.hr,
        hr2=spec.endpoint2.hr,
        rho=spec.rho,
        beta1=spec.endpoint1.shape,
        beta2=spec.endpoint2.shape,
    )
    try:
        control, treatment = build_scenario_models(spec)
    except InfeasibleCalibrationError:
        return SweepRow(**coords, status="infeasible")
    curve = hr_curve(spec, (control, treatment))
    m_hr, M_hr = extremes(curve, include_zero_limit=spec.numeric.zero_limit_candidate)
    a_density = average_hr(curve, "density")
    a_uniform = average_hr(curve, "uniform")
    p0 = float(composite_event_probability(control, spec.tau))
    p1 = float(composite_event_probability(treatment, spec.tau))
    effect = M_hr < 1.0
    r_density = r_measure(a_density, M_hr) if effect and a_density < 1.0 else None
    r_uniform = r_measure(a_uniform, M_hr) if effect and a_uniform < 1.0 else None
    a_default = a_density if spec.numeric.ahr_weighting == "density" else a_uniform
    r_default = r_density if spec.numeric.ahr_weighting == "density" else r_uniform
    return SweepRow(
        **coords,
        m_hr=m_hr,
        M_hr=M_hr,
        a_hr_density=a_density,
        a_hr_uniform=a_uniform,
        d=d_measure(m_hr, M_hr),
        r_density=r_density,
        r_uniform=r_uniform,
        p_star_control=p0,
        p_star_treatment=p1,
        n_a=sample_size(a_default, alpha, power, p0, p1) if a_default < 1.0 else None,
        n_M=sample_size(M_hr, alpha, power, p0, p1) if effect else None,
        nph_flag=None if r_default is None else bool(r_default > threshold),
        status="ok",
    )


def _pool_worker(args) -> SweepRow:
    spec, alpha, power, threshold = args
    return evaluate_scenario(spec, alpha, power, threshold)


def run_sweep(grid: GridSpec, workers: Optional[int] = None) -> list[SweepRow]:
    """Evaluate every grid scenario; rows come back in enumeration order.

    workers defaults to the CEHR_THREADS environment variable, then to the
    machine's core count. workers == 1 runs serially in-process.
    """
    scenarios = enumerate_scenarios(grid)
    if workers is None:
        workers = int(os.environ.get("CEHR_THREADS", "0")) or (os.cpu_count() or 1)
    args = [(spec, grid.alpha, grid.power, grid.threshold) for spec in scenarios]
    if workers <= 1 or len(scenarios) <= 1:
        return [_pool_worker(a) for a in args]
    chunk = max(1, len(args) // (workers * 8))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_pool_worker, args, chunksize=chunk))


def _format(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{value:.6g}"


def rows_to_csv(rows: Sequence[SweepRow]) -> str:
    """Serialize rows with the fixed column order and 6 significant digits."""
    out = io.StringIO()
    out.write(CSV_COLUMNS + "\n")
    names = [f.name for f in fields(SweepRow)]
    for row in rows:
        out.write(",".join(_format(getattr(row, n)) for n in names) + "\n")
    return out.getvalue()


def write_csv(rows: Sequence[SweepRow], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(rows_to_csv(rows))


def _shape_pattern(row: SweepRow) -> str:
    if row.beta1 != row.beta2:
        return "different"
    return f"both-{row.beta1:g}"


def _hr_diff(row: SweepRow) -> str:
    return f"{abs(row.hr1 - row.hr2):.1f}"


@dataclass(frozen=True)
class FactorLevel:
    factor: str
    level: str
    count: int
    r_min: float
    r_median: float
    r_max: float


def summarize_by_factor(
    rows: Sequence[SweepRow], factor: str, weighting: str = "density"
) -> list[FactorLevel]:
    """Min/median/max of R per factor level, over rows with status ok.

    Levels follow the reporting convention: hr_diff groups by the absolute
    difference of the component hazard ratios, shape_pattern by equal-shape
    value or "different", rho by its grid value, and global pools everything.
    """
    if factor not in FACTORS:
        raise DomainError(f"unknown factor {factor!r}; expected one of {FACTORS}")
    ok = [row for row in rows if row.status == "ok" and row.r(weighting) is not None]
    if not ok:
        raise DomainError("no evaluable rows to summarize")
    if factor == "global":
        keyed = {"all": ok}
    else:
        key_fn = {
            "hr_diff": _hr_diff,
            "shape_pattern": _shape_pattern,
            "rho": lambda row: f"{row.rho:g}",
        }[factor]
        keyed = {}
        for row in ok:
            keyed.setdefault(key_fn(row), []).append(row)
    levels = []
    for level in sorted(keyed):
        values = np.array([row.r(weighting) for row in keyed[level]], dtype=float)
        levels.append(
            FactorLevel(
                factor=factor,
                level=level,
                count=len(values),
                r_min=float(values.min()),
                r_median=float(np.median(values)),
                r_max=float(values.max()),
            )
        )
    return levels


@dataclass(frozen=True)
class FlagCell:
    shape_pattern: str
    hr_diff: str
    rho: str
    count: int
    above: int
    fraction: float


def flag_distribution(
    rows: Sequence[SweepRow], threshold: float, weighting: str = "density"
) -> list[FlagCell]:
    """Counts and fractions of rows with R strictly above the threshold,
    grouped by (shape pattern, hr difference, rho); plot-ready."""
    groups: dict[tuple[str, str, str], list[float]] = {}
    for row in rows:
        if row.status != "ok" or row.r(weighting) is None:
            continue
        key = (_shape_pattern(row), _hr_diff(row), f"{row.rho:g}")
        groups.setdefault(key, []).append(row.r(weighting))
    cells = []
    for key in sorted(groups):
        values = groups[key]
        above = sum(1 for v in values if v > threshold)
        cells.append(
            FlagCell(
                shape_pattern=key[0],
                hr_diff=key[1],
                rho=key[2],
                count=len(values),
                above=above,
                fraction=above / len(values),
            )
        )
    return cells
