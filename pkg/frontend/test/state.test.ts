import { describe, expect, it, vi } from "vitest";

import { ExplorerController } from "../src/controller.js";
import { ExplorerStore, HISTORY_LIMIT } from "../src/state.js";
import type { EvaluateRequest, EvaluateResponse } from "../src/types.js";
import { ZODIAC_DEFAULTS } from "../src/types.js";
import { zodiacExpExp } from "./fixtures.js";

/** Client whose promises resolve only when the test says so. */
class ManualClient {
  calls: { request: EvaluateRequest; resolve: (r: EvaluateResponse) => void; reject: (e: Error) => void }[] = [];

  evaluate(request: EvaluateRequest): Promise<EvaluateResponse> {
    return new Promise((resolve, reject) => {
      this.calls.push({ request, resolve, reject });
    });
  }

  /** Resolve call i with a response stamped by the requested hr2. */
  release(i: number): void {
    const call = this.calls[i];
    if (!call) throw new Error(`no call ${i}`);
    const response = structuredClone(zodiacExpExp);
    response.hr2 = call.request.endpoint2.hr;
    call.resolve(response);
  }
}

const tick = () => new Promise((resolve) => setTimeout(resolve, 0));

describe("stale-response guard", () => {
  it("rapid slider movements: the final render matches the final parameters", async () => {
    const store = new ExplorerStore(ZODIAC_DEFAULTS);
    const client = new ManualClient();
    const controller = new ExplorerController(store, client, 0);

    const dragged = [0.7, 0.65, 0.6, 0.55, 0.5];
    for (const hr2 of dragged) {
      store.setParam("hr2", hr2);
      void controller.evaluateNow();
    }
    expect(client.calls).toHaveLength(5);

    // responses come back wildly out of order
    for (const i of [2, 0, 4, 1, 3]) client.release(i);
    await tick();

    expect(store.pending).toBe(false);
    expect(store.current?.params.hr2).toBe(0.5);
    expect(store.current?.response.hr2).toBe(0.5);
    // only the newest response was ever applied
    expect(store.history).toHaveLength(1);
  });

  it("an older in-flight response never overwrites a newer applied one", async () => {
    const store = new ExplorerStore(ZODIAC_DEFAULTS);
    const client = new ManualClient();
    const controller = new ExplorerController(store, client, 0);

    store.setParam("hr2", 0.7);
    void controller.evaluateNow();
    store.setParam("hr2", 0.5);
    void controller.evaluateNow();

    client.release(1);
    await tick();
    expect(store.current?.response.hr2).toBe(0.5);

    client.release(0);
    await tick();
    expect(store.current?.response.hr2).toBe(0.5);
    expect(store.history).toHaveLength(1);
  });

  it("stale errors are also dropped", async () => {
    const store = new ExplorerStore(ZODIAC_DEFAULTS);
    const client = new ManualClient();
    const controller = new ExplorerController(store, client, 0);

    store.setParam("hr2", 0.7);
    void controller.evaluateNow();
    store.setParam("hr2", 0.5);
    void controller.evaluateNow();

    client.calls[0]!.reject(new Error("boom"));
    client.release(1);
    await tick();
    expect(store.lastError).toBeNull();
    expect(store.current?.response.hr2).toBe(0.5);
  });

  it("a failing newest request surfaces its error but keeps the last result", async () => {
    const store = new ExplorerStore(ZODIAC_DEFAULTS);
    const client = new ManualClient();
    const controller = new ExplorerController(store, client, 0);

    store.setParam("hr2", 0.7);
    void controller.evaluateNow();
    client.release(0);
    await tick();

    store.setParam("hr2", 0.95);
    void controller.evaluateNow();
    client.calls[1]!.reject(new Error("infeasible"));
    await tick();

    expect(store.lastError).toContain("infeasible");
    expect(store.current?.response.hr2).toBe(0.7);
  });
});

describe("debounced parameter changes", () => {
  it("coalesces a drag into a single request", async () => {
    vi.useFakeTimers();
    try {
      const store = new ExplorerStore(ZODIAC_DEFAULTS);
      const client = new ManualClient();
      const controller = new ExplorerController(store, client, 250);
      for (let i = 0; i < 12; i++) {
        controller.setParam("hr2", 0.9 - i * 0.02);
        vi.advanceTimersByTime(40);
      }
      expect(client.calls).toHaveLength(0);
      vi.advanceTimersByTime(260);
      expect(client.calls).toHaveLength(1);
      expect(client.calls[0]!.request.endpoint2.hr).toBeCloseTo(0.68, 10);
    } finally {
      vi.useRealTimers();
    }
  });
});

describe("history", () => {
  it("keeps at most the last 20 states", async () => {
    const store = new ExplorerStore(ZODIAC_DEFAULTS);
    const client = new ManualClient();
    const controller = new ExplorerController(store, client, 0);
    for (let i = 0; i < 25; i++) {
      store.setParam("hr2", 0.99 - i * 0.01);
      const promise = controller.evaluateNow();
      client.release(i);
      await promise;
    }
    expect(store.history).toHaveLength(HISTORY_LIMIT);
    expect(store.history[HISTORY_LIMIT - 1]!.params.hr2).toBeCloseTo(0.75, 10);
    // oldest retained entry is the 6th issued state
    expect(store.history[0]!.params.hr2).toBeCloseTo(0.94, 10);
  });
});
