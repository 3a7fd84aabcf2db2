"""HTTP facade over scenario evaluation and sweeps.

Endpoints:
    POST /v1/evaluate  one scenario -> summary + transport-sized HR curve
    POST /v1/sweep     scenario grid -> rows + factor summaries (capped)
    GET  /v1/health    liveness and version

Handlers are stateless wrappers over the pure core, so identical request
bodies always produce identical response bodies. Environment variables:
CEHR_PORT (default 8080), CEHR_THREADS (sweep workers), CEHR_GRID_CAP
(default 10000 scenarios).
"""

from __future__ import annotations

import os
from typing import Literal, Optional

import numpy as np
from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, ConfigDict, Field

from . import __version__
from .composite import (
    EndpointSpec,
    NumericConfig,
    ScenarioSpec,
    build_scenario_models,
    hr_curve,
)
from .errors import DomainError, InfeasibleCalibrationError, NumericFailure
from .measures import summarize
from .sweep import FACTORS, GridSpec, run_sweep, summarize_by_factor

__all__ = ["create_app", "serve", "EvaluateRequest", "EvaluateResponse", "SweepRequest"]

DEFAULT_PORT = 8080
DEFAULT_GRID_CAP = 10000


class EndpointModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    p0: float = Field(gt=0.0, lt=1.0)
    hr: float = Field(gt=0.0, le=1.0)
    shape: float = Field(gt=0.0)
    fatal: bool


class NumericModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    grid_points: int = Field(default=2000, ge=16, le=200000)
    epsilon: float = Field(default=1e-4, gt=0.0, lt=1.0)
    ahr_weighting: Literal["density", "uniform"] = "density"
    grid_spacing: Literal["geometric", "uniform"] = "geometric"
    zero_limit_candidate: bool = True
    curve_max_points: int = Field(default=500, ge=2, le=200000)

    def to_config(self) -> NumericConfig:
        return NumericConfig(
            grid_points=self.grid_points,
            epsilon=self.epsilon,
            ahr_weighting=self.ahr_weighting,
            grid_spacing=self.grid_spacing,
            zero_limit_candidate=self.zero_limit_candidate,
            curve_max_points=self.curve_max_points,
        )


class EvaluateRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    tau: float = Field(default=1.0, gt=0.0)
    rho: float = Field(ge=0.0, le=0.95)
    endpoint1: EndpointModel
    endpoint2: EndpointModel
    alpha: float = Field(default=0.05, gt=0.0, lt=0.5)
    power: float = Field(default=0.8, gt=0.5, lt=1.0)
    threshold: float = Field(default=1.25, gt=0.0)
    numeric: NumericModel = Field(default_factory=NumericModel)

    def to_scenario(self) -> ScenarioSpec:
        return ScenarioSpec(
            endpoint1=EndpointSpec(**self.endpoint1.model_dump()),
            endpoint2=EndpointSpec(**self.endpoint2.model_dump()),
            rho=self.rho,
            tau=self.tau,
            numeric=self.numeric.to_config(),
        )


class SummaryModel(BaseModel):
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


class CurveModel(BaseModel):
    times: list[float]
    hr_star: list[float]
    s_star_control: list[float]
    s_star_treatment: list[float]
    hr_limit_at_zero: float


class EvaluateResponse(BaseModel):
    summary: SummaryModel
    curve: CurveModel
    hr1: float
    hr2: float
    alpha: float
    power: float
    threshold: float
    numeric: NumericModel


class SweepRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    p_values: list[float] = Field(default=[0.1, 0.3, 0.5], min_length=1)
    hr_values: list[float] = Field(default=[0.6, 0.7, 0.8, 0.9], min_length=1)
    rho_values: list[float] = Field(default=[0.1, 0.3, 0.5], min_length=1)
    shape_values: list[float] = Field(default=[0.5, 1.0, 2.0], min_length=1)
    tau: float = Field(default=1.0, gt=0.0)
    alpha: float = Field(default=0.05, gt=0.0, lt=0.5)
    power: float = Field(default=0.8, gt=0.5, lt=1.0)
    threshold: float = Field(default=1.25, gt=0.0)
    numeric: NumericModel = Field(default_factory=NumericModel)

    def to_grid(self) -> GridSpec:
        return GridSpec(
            p_values=tuple(self.p_values),
            hr_values=tuple(self.hr_values),
            rho_values=tuple(self.rho_values),
            shape_values=tuple(self.shape_values),
            tau=self.tau,
            alpha=self.alpha,
            power=self.power,
            threshold=self.threshold,
            numeric=self.numeric.to_config(),
        )


class FactorLevelModel(BaseModel):
    factor: str
    level: str
    count: int
    r_min: float
    r_median: float
    r_max: float


class FactorSummaryModel(BaseModel):
    factor: str
    weighting: str
    levels: list[FactorLevelModel]


class SweepResponse(BaseModel):
    rows: list[dict]
    n_scenarios: int
    n_infeasible: int
    summaries: list[FactorSummaryModel]


def _downsample(values: np.ndarray, max_points: int) -> list[float]:
    n = len(values)
    if n <= max_points:
        return [float(x) for x in values]
    idx = np.unique(np.round(np.linspace(0, n - 1, max_points)).astype(int))
    return [float(x) for x in values[idx]]


def _evaluate(request: EvaluateRequest) -> EvaluateResponse:
    spec = request.to_scenario()
    control, treatment = build_scenario_models(spec)
    curve = hr_curve(spec, (control, treatment))
    summary = summarize(
        curve,
        control,
        treatment,
        tau=spec.tau,
        alpha=request.alpha,
        power=request.power,
        threshold=request.threshold,
        weighting=spec.numeric.ahr_weighting,
        include_zero_limit=spec.numeric.zero_limit_candidate,
    )
    cap = spec.numeric.curve_max_points
    n = len(curve.times)
    idx = (
        np.arange(n)
        if n <= cap
        else np.unique(np.round(np.linspace(0, n - 1, cap)).astype(int))
    )
    return EvaluateResponse(
        summary=SummaryModel(**summary.__dict__),
        curve=CurveModel(
            times=[float(x) for x in curve.times[idx]],
            hr_star=[float(x) for x in curve.hr_star[idx]],
            s_star_control=[float(x) for x in curve.s_star_control[idx]],
            s_star_treatment=[float(x) for x in curve.s_star_treatment[idx]],
            hr_limit_at_zero=curve.hr_limit_at_zero,
        ),
        hr1=request.endpoint1.hr,
        hr2=request.endpoint2.hr,
        alpha=request.alpha,
        power=request.power,
        threshold=request.threshold,
        numeric=request.numeric,
    )


def create_app(grid_cap: Optional[int] = None) -> FastAPI:
    app = FastAPI(title="cehr", version=__version__)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    cap = grid_cap if grid_cap is not None else int(
        os.environ.get("CEHR_GRID_CAP", str(DEFAULT_GRID_CAP))
    )

    @app.exception_handler(RequestValidationError)
    async def on_validation_error(request: Request, exc: RequestValidationError):
        detail = [
            {"field": ".".join(str(part) for part in err["loc"]), "message": err["msg"]}
            for err in exc.errors()
        ]
        return JSONResponse(status_code=400, content={"detail": detail})

    @app.exception_handler(DomainError)
    async def on_domain_error(request: Request, exc: DomainError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(InfeasibleCalibrationError)
    async def on_infeasible(request: Request, exc: InfeasibleCalibrationError):
        return JSONResponse(
            status_code=422,
            content={
                "detail": str(exc),
                "target": exc.target,
                "achievable_supremum": exc.achievable,
            },
        )

    @app.exception_handler(NumericFailure)
    async def on_numeric_failure(request: Request, exc: NumericFailure):
        return JSONResponse(status_code=500, content={"detail": str(exc)})

    @app.get("/v1/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.post("/v1/evaluate", response_model=EvaluateResponse)
    def evaluate(request: EvaluateRequest):
        return _evaluate(request)

    @app.post("/v1/sweep", response_model=SweepResponse)
    def sweep(request: SweepRequest):
        grid = request.to_grid()
        if grid.size > cap:
            return JSONResponse(
                status_code=413,
                content={
                    "detail": f"grid of {grid.size} scenarios exceeds the cap of {cap}"
                },
            )
        rows = run_sweep(grid)
        ok_rows = [row for row in rows if row.status == "ok"]
        summaries = []
        for weighting in ("density", "uniform"):
            for factor in FACTORS:
                levels = summarize_by_factor(rows, factor, weighting) if ok_rows else []
                summaries.append(
                    FactorSummaryModel(
                        factor=factor,
                        weighting=weighting,
                        levels=[FactorLevelModel(**lv.__dict__) for lv in levels],
                    )
                )
        return SweepResponse(
            rows=[row.__dict__ for row in rows],
            n_scenarios=len(rows),
            n_infeasible=sum(1 for row in rows if row.status == "infeasible"),
            summaries=summaries,
        )

    return app


def serve(port: Optional[int] = None, host: str = "127.0.0.1") -> None:
    """Run the service until interrupted; raises OSError if the port is busy."""
    import uvicorn

    if port is None:
        port = int(os.environ.get("CEHR_PORT", str(DEFAULT_PORT)))
    uvicorn.run(create_app(), host=host, port=port, log_level="warning")
