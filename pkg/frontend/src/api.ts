/** Typed client for the service's JSON API. */

import type {
  EstimatePayload,
  ErrorEnvelope,
  ExplainResponse,
  HistoryPoint,
  SimulateResponse,
} from "./types.js";

const HEALTH_TIMEOUT_MS = 5000;

export class ApiError extends Error {
  readonly status: number;
  readonly code: string;
  readonly fieldPath: string | null;

  constructor(status: number, envelope: Partial<ErrorEnvelope> | null) {
    super(envelope?.message ?? `request failed with status ${status}`);
    this.status = status;
    this.code = envelope?.code ?? "http_error";
    this.fieldPath = envelope?.field_path ?? null;
  }
}

export class ApiClient {
  constructor(
    readonly base: string,
    readonly user: string = "local",
  ) {}

  private url(path: string): string {
    return this.base.replace(/\/+$/, "") + path;
  }

  private async request<T>(path: string, init: RequestInit = {}): Promise<T> {
    const headers: Record<string, string> = {
      "Content-Type": "application/json",
      "X-User": this.user,
      ...(init.headers as Record<string, string> | undefined),
    };
    const response = await fetch(this.url(path), { ...init, headers });
    let body: unknown = null;
    try {
      body = await response.json();
    } catch {
      body = null;
    }
    if (!response.ok) {
      throw new ApiError(response.status, body as Partial<ErrorEnvelope> | null);
    }
    return body as T;
  }

  estimate(record: Record<string, number>): Promise<EstimatePayload> {
    return this.request("/v1/estimate", {
      method: "POST",
      body: JSON.stringify(record),
    });
  }

  explain(
    record: Record<string, number>,
    narrativeMode?: "template" | "llm",
  ): Promise<ExplainResponse> {
    const body: Record<string, unknown> = { record };
    if (narrativeMode) {
      body.options = { narrative_mode: narrativeMode };
    }
    return this.request("/v1/explain", {
      method: "POST",
      body: JSON.stringify(body),
    });
  }

  simulate(
    baseRecord: Record<string, number>,
    overrides: Record<string, number>,
  ): Promise<SimulateResponse> {
    return this.request("/v1/simulate", {
      method: "POST",
      body: JSON.stringify({ base_record: baseRecord, overrides }),
    });
  }

  putLog(
    kind: "DAILY" | "NONDAILY",
    values: Record<string, number>,
    date?: string,
  ): Promise<{ status: string; point: HistoryPoint }> {
    const body: Record<string, unknown> = { kind, values };
    if (date) {
      body.date = date;
    }
    return this.request("/v1/logs", { method: "POST", body: JSON.stringify(body) });
  }

  async history(days = 30): Promise<HistoryPoint[]> {
    const body = await this.request<{ points: HistoryPoint[] }>(
      `/v1/history?days=${days}`,
    );
    return body.points;
  }

  /** Connectivity probe; resolves false instead of throwing. */
  async health(): Promise<boolean> {
    try {
      const controller = new AbortController();
      const timer = setTimeout(() => controller.abort(), HEALTH_TIMEOUT_MS);
      const response = await fetch(this.url("/v1/health"), {
        method: "GET",
        signal: controller.signal,
        cache: "no-store",
      });
      clearTimeout(timer);
      return response.ok;
    } catch {
      return false;
    }
  }
}
