// Explorer state: current parameters, the response being displayed, a
// bounded history for undo/compare, and the sequence guard that keeps the
// rendered curve in step with the displayed parameters.

import type { EvaluateResponse, ScenarioParams } from "./types.js";

export interface HistoryEntry {
  params: ScenarioParams;
  response: EvaluateResponse;
}

export const HISTORY_LIMIT = 20;

export class ExplorerStore {
  params: ScenarioParams;
  current: HistoryEntry | null = null;
  history: HistoryEntry[] = [];
  pending = false;
  lastError: string | null = null;

  private issuedSeq = 0;
  private renderedSeq = 0;

  constructor(initial: ScenarioParams) {
    this.params = { ...initial };
  }

  setParam<K extends keyof ScenarioParams>(key: K, value: ScenarioParams[K]): void {
    this.params = { ...this.params, [key]: value };
  }

  /** Stamp a new request; responses carrying older stamps are stale. */
  beginRequest(): number {
    this.pending = true;
    return ++this.issuedSeq;
  }

  /**
   * Accept a response only when it belongs to the newest issued request,
   * so an out-of-order arrival can never overwrite a newer result and the
   * final render always matches the final parameters.
   */
  applyResponse(seq: number, params: ScenarioParams, response: EvaluateResponse): boolean {
    if (seq !== this.issuedSeq || seq <= this.renderedSeq) {
      return false;
    }
    this.renderedSeq = seq;
    this.pending = false;
    this.lastError = null;
    this.current = { params: { ...params }, response };
    this.history.push(this.current);
    if (this.history.length > HISTORY_LIMIT) {
      this.history.splice(0, this.history.length - HISTORY_LIMIT);
    }
    return true;
  }

  /** Report a request failure; stale failures are ignored the same way. */
  applyError(seq: number, message: string): boolean {
    if (seq !== this.issuedSeq || seq <= this.renderedSeq) {
      return false;
    }
    this.renderedSeq = seq;
    this.pending = false;
    this.lastError = message;
    return true;
  }
}

export interface Badge {
  /** Raw service value; the DOM binds it verbatim (data-value). */
  value: number | null;
  text: string;
}

export interface BadgeModel {
  d: Badge;
  r: Badge;
  thresholdVisible: boolean;
  thresholdText: string;
  sampleSizes: { n_a: number | null; n_M: number | null; increase: string };
}

export function buildBadges(response: EvaluateResponse): BadgeModel {
  const s = response.summary;
  const increase =
    s.n_a !== null && s.n_M !== null && s.n_a > 0
      ? `${(((s.n_M - s.n_a) / s.n_a) * 100).toFixed(0)}%`
      : "n/a";
  return {
    d: { value: s.d, text: `D = ${s.d.toFixed(3)}` },
    r: { value: s.r, text: s.r === null ? "R = n/a" : `R = ${s.r.toFixed(2)}` },
    thresholdVisible: s.r !== null && s.r > response.threshold,
    thresholdText:
      s.r !== null && s.r > response.threshold
        ? `R above ${response.threshold}: constant-hazard-ratio sample sizing is unreliable`
        : "",
    sampleSizes: { n_a: s.n_a, n_M: s.n_M, increase },
  };
}
