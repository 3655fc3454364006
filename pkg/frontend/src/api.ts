/** Thin fetch client for the engine's HTTP API. */

import { SseParser } from "./sse.js";
import type {
  EngineConfig,
  Experiment,
  Paradigm,
  PresetParams,
  RunSnapshot,
  ValidationReport,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: unknown,
  ) {
    super(describe(status, detail));
  }
}

function describe(status: number, detail: unknown): string {
  if (detail !== null && typeof detail === "object") {
    const record = detail as Record<string, unknown>;
    if (typeof record.message === "string") {
      return record.message;
    }
    if (typeof record.code === "string") {
      return record.code;
    }
  }
  return `request failed with status ${status}`;
}

export type RunEventHandler = (event: string, data: Record<string, unknown>) => void;

export class ApiClient {
  constructor(private readonly baseUrl: string = "") {}

  async validate(config: EngineConfig): Promise<ValidationReport> {
    return this.post<ValidationReport>("/api/validate", config);
  }

  async classify(config: EngineConfig): Promise<Paradigm> {
    const body = await this.post<{ paradigm: Paradigm }>("/api/classify", config);
    return body.paradigm;
  }

  async preset(paradigm: Paradigm, params: PresetParams): Promise<EngineConfig> {
    return this.post<EngineConfig>("/api/preset", { paradigm, params });
  }

  async startRun(experiment: Experiment): Promise<string> {
    const body = await this.post<{ runId: string }>("/api/runs", experiment);
    return body.runId;
  }

  async snapshot(runId: string): Promise<RunSnapshot> {
    const response = await fetch(`${this.baseUrl}/api/runs/${runId}`);
    return this.decode<RunSnapshot>(response);
  }

  async deleteRun(runId: string): Promise<void> {
    const response = await fetch(`${this.baseUrl}/api/runs/${runId}`, {
      method: "DELETE",
    });
    if (!response.ok) {
      throw new ApiError(response.status, null);
    }
  }

  /**
   * Subscribe to the run's event stream; resolves after the terminal
   * "complete" event (or when the server closes the stream).
   */
  async streamRun(runId: string, onEvent: RunEventHandler): Promise<void> {
    const response = await fetch(`${this.baseUrl}/api/runs/${runId}/events`);
    if (!response.ok || response.body === null) {
      throw new ApiError(response.status, null);
    }
    const reader = response.body.getReader();
    const decoder = new TextDecoder();
    const parser = new SseParser();
    for (;;) {
      const { done, value } = await reader.read();
      if (done) {
        return;
      }
      for (const item of parser.push(decoder.decode(value, { stream: true }))) {
        onEvent(item.event, JSON.parse(item.data) as Record<string, unknown>);
        if (item.event === "complete") {
          await reader.cancel().catch(() => undefined);
          return;
        }
      }
    }
  }

  private async post<T>(path: string, payload: unknown): Promise<T> {
    const response = await fetch(this.baseUrl + path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(payload),
    });
    return this.decode<T>(response);
  }

  private async decode<T>(response: Response): Promise<T> {
    const body: unknown = await response.json().catch(() => null);
    if (!response.ok) {
      const detail =
        body !== null && typeof body === "object" && "detail" in body
          ? (body as { detail: unknown }).detail
          : body;
      throw new ApiError(response.status, detail);
    }
    return body as T;
  }
}
