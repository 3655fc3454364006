/**
 * Panel state container.
 *
 * All engine semantics stay on the server: the displayed paradigm is
 * always the server's classification, and feasibility comes from the
 * server's validation report. The store only debounces edits, guards
 * against stale responses, and fans state out to subscribers.
 */

import type { ApiClient } from "./api.js";
import type {
  EngineConfig,
  GenerationStats,
  Paradigm,
  PresetParams,
  ProblemSpec,
  RunSettings,
  RunStatus,
  Violation,
} from "./types.js";

export interface RunView {
  runId: string;
  status: RunStatus;
  stopReason: string | null;
  error: string | null;
  points: GenerationStats[];
}

export interface PanelState {
  config: EngineConfig;
  /** Server classification; null while unknown or infeasible. */
  paradigm: Paradigm | null;
  feasible: boolean;
  violations: Violation[];
  /** True while a validate/classify round-trip is pending or in flight. */
  checking: boolean;
  run: RunView | null;
  /** Non-null when the panel itself failed to reach the service. */
  transportError: string | null;
}

/** Run may start only on a settled, feasible config with no active run. */
export function canRun(state: PanelState): boolean {
  return (
    state.feasible &&
    !state.checking &&
    state.transportError === null &&
    state.run?.status !== "running"
  );
}

/** Config field paths to highlight, both full paths and their roots. */
export function highlightedFields(violations: Violation[]): Set<string> {
  const fields = new Set<string>();
  for (const violation of violations) {
    if (violation.offendingField === "") {
      continue;
    }
    fields.add(violation.offendingField);
    const root = violation.offendingField.split(".")[0]!;
    fields.add(root);
  }
  return fields;
}

export type Listener = (state: PanelState) => void;

export const DEBOUNCE_MS = 150;

export class PanelStore {
  private state: PanelState;
  private readonly listeners = new Set<Listener>();
  private timer: ReturnType<typeof setTimeout> | null = null;
  private epoch = 0;

  constructor(
    private readonly api: ApiClient,
    initial: EngineConfig,
    private readonly debounceMs: number = DEBOUNCE_MS,
  ) {
    this.state = {
      config: initial,
      paradigm: null,
      feasible: false,
      violations: [],
      checking: true,
      run: null,
      transportError: null,
    };
  }

  getState(): PanelState {
    return this.state;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.add(listener);
    listener(this.state);
    return () => this.listeners.delete(listener);
  }

  /** Apply a config edit; revalidation fires after the debounce window. */
  edit(mutate: (config: EngineConfig) => EngineConfig): void {
    this.setState({ config: mutate(this.state.config), checking: true });
    if (this.timer !== null) {
      clearTimeout(this.timer);
    }
    this.timer = setTimeout(() => {
      void this.refresh();
    }, this.debounceMs);
  }

  /** Replace the whole config (e.g. loaded from a file). */
  setConfig(config: EngineConfig): void {
    this.edit(() => config);
  }

  /** Force any pending debounced revalidation to run now. */
  async flush(): Promise<void> {
    if (this.timer !== null || this.state.checking) {
      await this.refresh();
    }
  }

  /** Fetch the preset shape from the server and adopt it. */
  async applyPreset(paradigm: Paradigm, params: PresetParams): Promise<void> {
    const config = await this.api.preset(paradigm, params);
    this.setState({ config, checking: true });
    await this.refresh();
  }

  /** Validate the current config and, when feasible, classify it. */
  async refresh(): Promise<void> {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    const epoch = ++this.epoch;
    const config = this.state.config;
    try {
      const report = await this.api.validate(config);
      const paradigm = report.feasible ? await this.api.classify(config) : null;
      if (epoch !== this.epoch) {
        return;
      }
      this.setState({
        feasible: report.feasible,
        violations: report.violations,
        paradigm,
        checking: false,
        transportError: null,
      });
    } catch (error) {
      if (epoch !== this.epoch) {
        return;
      }
      this.setState({
        feasible: false,
        violations: [],
        paradigm: null,
        checking: false,
        transportError: String(error),
      });
    }
  }

  /** Launch a run on the current config and follow its event stream. */
  async startRun(run: RunSettings, problem: ProblemSpec): Promise<void> {
    if (!canRun(this.state)) {
      throw new Error("run is disabled for the current state");
    }
    const runId = await this.api.startRun({
      engine: this.state.config,
      run,
      problem,
    });
    this.setState({
      run: { runId, status: "running", stopReason: null, error: null, points: [] },
    });
    this.api
      .streamRun(runId, (event, data) => this.onRunEvent(runId, event, data))
      .catch((error: unknown) => {
        const current = this.state.run;
        if (current !== null && current.runId === runId && current.status === "running") {
          this.setState({
            run: { ...current, status: "failed", error: String(error) },
          });
        }
      });
  }

  private onRunEvent(runId: string, event: string, data: Record<string, unknown>): void {
    const current = this.state.run;
    if (current === null || current.runId !== runId) {
      return;
    }
    if (event === "generation") {
      this.setState({
        run: {
          ...current,
          points: [...current.points, data as unknown as GenerationStats],
        },
      });
    } else if (event === "complete") {
      this.setState({
        run: {
          ...current,
          status: (data.status as RunStatus | undefined) ?? "finished",
          stopReason: (data.stopReason as string | undefined) ?? null,
          error: (data.error as string | undefined) ?? null,
        },
      });
    }
  }

  private setState(partial: Partial<PanelState>): void {
    this.state = { ...this.state, ...partial };
    for (const listener of this.listeners) {
      listener(this.state);
    }
  }
}
