// Wire types of the evaluation service (POST /v1/evaluate).

export interface EndpointParams {
  p0: number;
  hr: number;
  shape: number;
  fatal: boolean;
}

export interface NumericParams {
  grid_points?: number;
  epsilon?: number;
  ahr_weighting?: "density" | "uniform";
  grid_spacing?: "geometric" | "uniform";
  zero_limit_candidate?: boolean;
  curve_max_points?: number;
}

export interface EvaluateRequest {
  tau: number;
  rho: number;
  endpoint1: EndpointParams;
  endpoint2: EndpointParams;
  alpha: number;
  power: number;
  threshold: number;
  numeric?: NumericParams;
}

export interface Summary {
  m_hr: number;
  M_hr: number;
  a_hr: number;
  d: number;
  r: number | null;
  p_star_control: number;
  p_star_treatment: number;
  events_a: number | null;
  events_M: number | null;
  n_a: number | null;
  n_M: number | null;
  nph_flag: boolean;
  weighting: string;
}

export interface Curve {
  times: number[];
  hr_star: number[];
  s_star_control: number[];
  s_star_treatment: number[];
  hr_limit_at_zero: number;
}

export interface EvaluateResponse {
  summary: Summary;
  curve: Curve;
  hr1: number;
  hr2: number;
  alpha: number;
  power: number;
  threshold: number;
  numeric: Required<NumericParams>;
}

// Flat slider-friendly parameter set; converted to the request shape on send.
export interface ScenarioParams {
  p1: number;
  p2: number;
  hr1: number;
  hr2: number;
  shape1: number;
  shape2: number;
  rho: number;
  tau: number;
  alpha: number;
  power: number;
  threshold: number;
}

export function toRequest(params: ScenarioParams): EvaluateRequest {
  return {
    tau: params.tau,
    rho: params.rho,
    endpoint1: { p0: params.p1, hr: params.hr1, shape: params.shape1, fatal: true },
    endpoint2: { p0: params.p2, hr: params.hr2, shape: params.shape2, fatal: false },
    alpha: params.alpha,
    power: params.power,
    threshold: params.threshold,
  };
}

export const ZODIAC_DEFAULTS: ScenarioParams = {
  p1: 0.59,
  p2: 0.74,
  hr1: 0.91,
  hr2: 0.77,
  shape1: 1.0,
  shape2: 1.0,
  rho: 0.5,
  tau: 1.0,
  alpha: 0.05,
  power: 0.8,
  threshold: 1.25,
};
