import type { EvaluateRequest, EvaluateResponse } from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: unknown,
  ) {
    super(typeof detail === "string" ? detail : `service error ${status}`);
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class EvaluateClient {
  constructor(
    readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (...args) => fetch(...args),
  ) {}

  async health(): Promise<{ status: string; version: string }> {
    const response = await this.fetchFn(`${this.baseUrl}/v1/health`);
    if (!response.ok) throw new ApiError(response.status, await response.text());
    return response.json();
  }

  async evaluate(request: EvaluateRequest): Promise<EvaluateResponse> {
    const response = await this.fetchFn(`${this.baseUrl}/v1/evaluate`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(request),
    });
    if (!response.ok) {
      let detail: unknown;
      try {
        detail = (await response.json()).detail;
      } catch {
        detail = await response.text();
      }
      throw new ApiError(response.status, detail);
    }
    return response.json();
  }
}
