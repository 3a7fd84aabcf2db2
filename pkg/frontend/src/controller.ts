// Request loop between the controls and the evaluation service: debounced
// parameter changes, one newest-wins request stream, render callbacks.

import { ApiError } from "./api.js";
import { Debouncer } from "./debounce.js";
import type { ExplorerStore } from "./state.js";
import { toRequest, type EvaluateRequest, type EvaluateResponse, type ScenarioParams } from "./types.js";

export interface EvaluatorLike {
  evaluate(request: EvaluateRequest): Promise<EvaluateResponse>;
}

export class ExplorerController {
  private readonly debouncer: Debouncer;

  constructor(
    readonly store: ExplorerStore,
    private readonly client: EvaluatorLike,
    debounceMs = 250,
    private readonly onRender: () => void = () => {},
    private readonly onPending: () => void = () => {},
  ) {
    this.debouncer = new Debouncer(debounceMs);
  }

  /** Slider/select change: update state and schedule a debounced request. */
  setParam<K extends keyof ScenarioParams>(key: K, value: ScenarioParams[K]): void {
    this.store.setParam(key, value);
    this.onPending();
    this.debouncer.schedule(() => void this.evaluateNow());
  }

  setParams(params: ScenarioParams): void {
    this.store.params = { ...params };
    this.onPending();
    this.debouncer.schedule(() => void this.evaluateNow());
  }

  /** Issue a request for the current parameters; stale replies are dropped
   * by the store's sequence guard, so the final render always reflects the
   * final parameters. */
  async evaluateNow(): Promise<void> {
    const seq = this.store.beginRequest();
    const params = { ...this.store.params };
    try {
      const response = await this.client.evaluate(toRequest(params));
      if (this.store.applyResponse(seq, params, response)) this.onRender();
    } catch (error) {
      const message =
        error instanceof ApiError ? `service: ${JSON.stringify(error.detail)}` : String(error);
      if (this.store.applyError(seq, message)) this.onRender();
    }
  }
}
