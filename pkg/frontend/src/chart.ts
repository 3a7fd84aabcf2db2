// Deterministic chart model for the HR*(t) panel: the curve polyline, the
// component reference lines, the shaded band between the extreme values,
// and a right-hand axis mapping hazard ratios to required event counts.
// Pure data in, pure data out; the DOM layer only draws what is here.

import { eventsRequired } from "./events.js";
import type { EvaluateResponse } from "./types.js";

export interface ChartModel {
  width: number;
  height: number;
  margin: { left: number; right: number; top: number; bottom: number };
  xTicks: { x: number; label: string }[];
  yTicks: { y: number; label: string }[];
  eventTicks: { y: number; label: string }[];
  curvePath: string;
  band: { y: number; height: number; from: number; to: number };
  refLines: { y: number; value: number; label: string }[];
  yDomain: [number, number];
  xDomain: [number, number];
}

const MARGIN = { left: 48, right: 64, top: 12, bottom: 32 };

function niceTicks(lo: number, hi: number, count: number): number[] {
  const span = hi - lo;
  const step = Math.pow(10, Math.floor(Math.log10(span / count)));
  const candidates = [step, 2 * step, 2.5 * step, 5 * step, 10 * step];
  const chosen = candidates.find((s) => span / s <= count) ?? 10 * step;
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / chosen) * chosen; v <= hi + 1e-12; v += chosen) {
    ticks.push(Number(v.toFixed(12)));
  }
  return ticks;
}

export function buildChartModel(
  response: EvaluateResponse,
  width = 640,
  height = 360,
): ChartModel {
  const { curve, summary } = response;
  const inner = {
    w: width - MARGIN.left - MARGIN.right,
    h: height - MARGIN.top - MARGIN.bottom,
  };
  const xLo = 0;
  const xHi = curve.times[curve.times.length - 1] ?? 1;
  const values = [...curve.hr_star, summary.m_hr, summary.M_hr, response.hr1, response.hr2];
  const yLo = Math.min(...values) - 0.02;
  const yHi = Math.max(...values) + 0.02;

  const sx = (t: number) => MARGIN.left + ((t - xLo) / (xHi - xLo)) * inner.w;
  const sy = (v: number) => MARGIN.top + (1 - (v - yLo) / (yHi - yLo)) * inner.h;

  const curvePath = curve.times
    .map((t, i) => `${i === 0 ? "M" : "L"}${sx(t).toFixed(2)},${sy(curve.hr_star[i]!).toFixed(2)}`)
    .join("");

  const eventTicks = niceTicks(yLo, Math.min(yHi, 0.995), 6)
    .filter((v) => v > 0 && v < 1)
    .map((v) => ({ y: sy(v), label: String(eventsRequired(v, response.alpha, response.power)) }));

  return {
    width,
    height,
    margin: MARGIN,
    xTicks: niceTicks(xLo, xHi, 6).map((t) => ({ x: sx(t), label: t.toFixed(2) })),
    yTicks: niceTicks(yLo, yHi, 6).map((v) => ({ y: sy(v), label: v.toFixed(2) })),
    eventTicks,
    curvePath,
    band: {
      y: sy(summary.M_hr),
      height: Math.max(0, sy(summary.m_hr) - sy(summary.M_hr)),
      from: summary.m_hr,
      to: summary.M_hr,
    },
    refLines: [
      { y: sy(response.hr1), value: response.hr1, label: `fatal component HR ${response.hr1}` },
      { y: sy(response.hr2), value: response.hr2, label: `non-fatal component HR ${response.hr2}` },
    ],
    yDomain: [yLo, yHi],
    xDomain: [xLo, xHi],
  };
}
