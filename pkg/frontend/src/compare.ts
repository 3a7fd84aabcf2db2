// Side-by-side comparison of two evaluated states: the indicator and
// sample-size rows plus which inputs differ.

import type { HistoryEntry } from "./state.js";
import type { ScenarioParams } from "./types.js";

export interface CompareRow {
  label: string;
  a: number | null;
  b: number | null;
  delta: number | null;
}

export interface CompareModel {
  rows: CompareRow[];
  differingParams: (keyof ScenarioParams)[];
}

const PARAM_KEYS: (keyof ScenarioParams)[] = [
  "p1", "p2", "hr1", "hr2", "shape1", "shape2", "rho", "tau", "alpha", "power", "threshold",
];

function row(label: string, a: number | null, b: number | null): CompareRow {
  return { label, a, b, delta: a !== null && b !== null ? b - a : null };
}

export function comparePanel(a: HistoryEntry, b: HistoryEntry): CompareModel {
  const sa = a.response.summary;
  const sb = b.response.summary;
  return {
    rows: [
      row("mHR*", sa.m_hr, sb.m_hr),
      row("MHR*", sa.M_hr, sb.M_hr),
      row("aHR*", sa.a_hr, sb.a_hr),
      row("D", sa.d, sb.d),
      row("R", sa.r, sb.r),
      row("n (average effect)", sa.n_a, sb.n_a),
      row("n (minimum detectable)", sa.n_M, sb.n_M),
    ],
    differingParams: PARAM_KEYS.filter((key) => a.params[key] !== b.params[key]),
  };
}
