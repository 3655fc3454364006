/**
 * DOM wiring for the engine panel.
 *
 * All state transitions go through PanelStore; this module only builds
 * widgets, forwards edits, and re-renders from store snapshots.
 */

import { barModel, resolveSize, snapAbsolute, snapPercent } from "./sizes.js";
import { fitnessChart, DEFAULT_GEOMETRY } from "./chart.js";
import { canRun, highlightedFields, PanelStore } from "./store.js";
import { defaultProblem, defaultRunSettings } from "./defaults.js";
import type { PanelState } from "./store.js";
import type {
  EngineConfig,
  Paradigm,
  PresetParams,
  ProblemSpec,
  ReducerSpec,
  RunSettings,
  SelectorSpec,
  SizeParam,
} from "./types.js";

const SELECTOR_KINDS: SelectorSpec["kind"][] = [
  "roulette-wheel",
  "linear-ranking",
  "deterministic-tournament",
  "stochastic-tournament",
  "random",
  "sequential",
];

const REDUCER_KINDS: ReducerSpec["kind"][] = [
  "sequential",
  "random",
  "deterministic-tournament",
  "stochastic-tournament",
  "ep-tournament",
];

const PRESETS: Paradigm[] = ["gga", "ssga", "es-comma", "es-plus", "ep"];

type SizeField = "fertile" | "offspringSize" | "reducedNepSize" | "reducedOffspringSize";
type OperatorField = "parentSelector" | "nepReducer" | "offspringReducer" | "finalReducer";

const SIZE_UPSTREAM: Record<SizeField, (c: EngineConfig) => number> = {
  fertile: (c) => c.popSize,
  offspringSize: (c) => c.popSize,
  reducedNepSize: (c) => nepOf(c),
  reducedOffspringSize: (c) => resolveSize(c.offspringSize, c.popSize),
};

function nepOf(config: EngineConfig): number {
  const seats =
    config.elitism.mode === "strong" && config.elitism.eliteSize > 0
      ? config.elitism.eliteSize
      : 0;
  return Math.max(config.popSize - seats, 0);
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className !== undefined) {
    node.className = className;
  }
  if (text !== undefined) {
    node.textContent = text;
  }
  return node;
}

function numberInput(value: number, step = 1): HTMLInputElement {
  const input = el("input");
  input.type = "number";
  input.step = String(step);
  input.value = String(value);
  return input;
}

/** Update an input only when the user is not typing in it. */
function syncValue(input: HTMLInputElement | HTMLSelectElement, value: string): void {
  if (document.activeElement !== input && input.value !== value) {
    input.value = value;
  }
}

function labeled(field: string, label: string, ...widgets: HTMLElement[]): HTMLElement {
  const row = el("div", "field-row");
  row.dataset.field = field;
  row.appendChild(el("label", "field-label", label));
  const box = el("div", "field-widgets");
  for (const w of widgets) {
    box.appendChild(w);
  }
  row.appendChild(box);
  return row;
}

interface RunFormValues {
  run: RunSettings;
  problem: ProblemSpec;
}

export class Panel {
  private readonly root: HTMLElement;
  private readonly store: PanelStore;

  private paradigmBadge!: HTMLElement;
  private statusLine!: HTMLElement;
  private violationsBox!: HTMLElement;
  private runButton!: HTMLButtonElement;
  private barsSvg!: SVGSVGElement;
  private chartSvg!: SVGSVGElement;
  private stopReasonLine!: HTMLElement;
  private engineForm!: HTMLElement;

  private popSizeInput!: HTMLInputElement;
  private senseSelect!: HTMLSelectElement;
  private eliteModeSelect!: HTMLSelectElement;
  private eliteSizeInput!: HTMLInputElement;
  private readonly sizeInputs = new Map<
    SizeField,
    { value: HTMLInputElement; mode: HTMLButtonElement }
  >();
  private readonly operatorBoxes = new Map<
    OperatorField,
    { kind: HTMLSelectElement; params: HTMLElement }
  >();

  private presetSelect!: HTMLSelectElement;
  private presetPop!: HTMLInputElement;
  private presetLambda!: HTMLInputElement;
  private presetOffspring!: HTMLInputElement;
  private presetElite!: HTMLInputElement;

  private runForm!: HTMLElement;

  private drag: {
    field: SizeField;
    mode: SizeParam["mode"];
    startValue: number;
    startY: number;
    unitsPerPixel: number;
    upstream: number;
  } | null = null;

  constructor(root: HTMLElement, store: PanelStore) {
    this.root = root;
    this.store = store;
    this.build();
    this.store.subscribe((state) => this.render(state));
  }

  private build(): void {
    this.root.textContent = "";

    const header = el("header", "panel-header");
    header.appendChild(el("h1", undefined, "Evolutionary Engine Panel"));
    this.paradigmBadge = el("span", "paradigm-badge", "—");
    header.appendChild(this.paradigmBadge);
    this.root.appendChild(header);

    const columns = el("div", "panel-columns");
    columns.appendChild(this.buildConfigColumn());
    columns.appendChild(this.buildFlowColumn());
    columns.appendChild(this.buildRunColumn());
    this.root.appendChild(columns);
  }

  private buildConfigColumn(): HTMLElement {
    const col = el("section", "panel-column");
    col.appendChild(this.buildPresetMenu());
    this.engineForm = el("div", "engine-form");
    col.appendChild(this.engineForm);

    const config = this.store.getState().config;

    this.popSizeInput = numberInput(config.popSize);
    this.popSizeInput.min = "1";
    this.popSizeInput.addEventListener("input", () =>
      this.editNumber(this.popSizeInput, (c, v) => ({ ...c, popSize: Math.max(1, Math.round(v)) })),
    );
    this.engineForm.appendChild(labeled("popSize", "Population size", this.popSizeInput));

    this.senseSelect = el("select");
    for (const sense of ["maximize", "minimize"]) {
      const opt = el("option", undefined, sense);
      opt.value = sense;
      this.senseSelect.appendChild(opt);
    }
    this.senseSelect.addEventListener("change", () => {
      const sense = this.senseSelect.value as EngineConfig["sense"];
      this.store.edit((c) => ({ ...c, sense }));
    });
    this.engineForm.appendChild(labeled("sense", "Objective sense", this.senseSelect));

    this.engineForm.appendChild(this.buildSizeField("fertile", "Fertile size"));
    this.engineForm.appendChild(
      this.buildOperatorField("parentSelector", "Parent selector", SELECTOR_KINDS),
    );
    this.engineForm.appendChild(this.buildSizeField("offspringSize", "Offspring size"));
    this.engineForm.appendChild(
      this.buildOperatorField("nepReducer", "N.E.P. reducer", REDUCER_KINDS),
    );
    this.engineForm.appendChild(this.buildSizeField("reducedNepSize", "Reduced N.E.P. size"));
    this.engineForm.appendChild(
      this.buildOperatorField("offspringReducer", "Offspring reducer", REDUCER_KINDS),
    );
    this.engineForm.appendChild(
      this.buildSizeField("reducedOffspringSize", "Reduced offspring size"),
    );
    this.engineForm.appendChild(
      this.buildOperatorField("finalReducer", "Final reducer", REDUCER_KINDS),
    );

    this.eliteModeSelect = el("select");
    for (const mode of ["weak", "strong"]) {
      const opt = el("option", undefined, mode);
      opt.value = mode;
      this.eliteModeSelect.appendChild(opt);
    }
    this.eliteModeSelect.addEventListener("change", () => {
      const mode = this.eliteModeSelect.value as EngineConfig["elitism"]["mode"];
      this.store.edit((c) => ({ ...c, elitism: { ...c.elitism, mode } }));
    });
    this.eliteSizeInput = numberInput(config.elitism.eliteSize);
    this.eliteSizeInput.min = "0";
    this.eliteSizeInput.addEventListener("input", () =>
      this.editNumber(this.eliteSizeInput, (c, v) => ({
        ...c,
        elitism: { ...c.elitism, eliteSize: Math.max(0, Math.round(v)) },
      })),
    );
    this.engineForm.appendChild(
      labeled("elitism", "Elitism", this.eliteModeSelect, this.eliteSizeInput),
    );

    this.violationsBox = el("div", "violations");
    col.appendChild(this.violationsBox);
    return col;
  }

  private buildPresetMenu(): HTMLElement {
    const box = el("div", "preset-menu");
    box.appendChild(el("h2", undefined, "Presets"));

    this.presetSelect = el("select");
    for (const p of PRESETS) {
      const opt = el("option", undefined, p);
      opt.value = p;
      this.presetSelect.appendChild(opt);
    }
    this.presetPop = numberInput(30);
    this.presetLambda = numberInput(90);
    this.presetOffspring = numberInput(1);
    this.presetElite = numberInput(1);

    const grid = el("div", "preset-grid");
    grid.appendChild(labeled("preset.paradigm", "Paradigm", this.presetSelect));
    grid.appendChild(labeled("preset.popSize", "popSize", this.presetPop));
    grid.appendChild(labeled("preset.lambda", "lambda (ES)", this.presetLambda));
    grid.appendChild(labeled("preset.offspringCount", "offspring (SSGA)", this.presetOffspring));
    grid.appendChild(labeled("preset.weakElite", "weak elite (GGA)", this.presetElite));
    box.appendChild(grid);

    const apply = el("button", "preset-apply", "Apply preset") as HTMLButtonElement;
    apply.addEventListener("click", () => {
      const paradigm = this.presetSelect.value as Paradigm;
      const params: PresetParams = { popSize: this.presetPop.valueAsNumber || 1 };
      if (paradigm === "es-comma" || paradigm === "es-plus") {
        params.lambda = this.presetLambda.valueAsNumber || 1;
      }
      if (paradigm === "ssga") {
        params.offspringCount = this.presetOffspring.valueAsNumber || 1;
      }
      if (paradigm === "gga") {
        params.weakElite = this.presetElite.valueAsNumber || 0;
      }
      this.store.applyPreset(paradigm, params).catch((error: unknown) => {
        this.statusLine.textContent = `preset rejected: ${String(error)}`;
      });
    });
    box.appendChild(apply);
    return box;
  }

  private buildSizeField(field: SizeField, label: string): HTMLElement {
    const config = this.store.getState().config;
    const param = config[field];
    const value = numberInput(param.value);
    value.min = "0";
    const mode = el("button", "mode-toggle", param.mode === "percent" ? "%" : "#") as HTMLButtonElement;
    mode.title = "Toggle absolute (#) / percent (%)";

    value.addEventListener("input", () => {
      const v = value.valueAsNumber;
      if (Number.isNaN(v)) {
        return;
      }
      this.store.edit((c) => {
        const current = c[field];
        const next: SizeParam =
          current.mode === "percent"
            ? { mode: "percent", value: Math.min(100, Math.max(0, v)) }
            : { mode: "absolute", value: Math.max(0, Math.round(v)) };
        return { ...c, [field]: next };
      });
    });
    mode.addEventListener("click", () => {
      this.store.edit((c) => {
        const current = c[field];
        const upstream = Math.max(SIZE_UPSTREAM[field](c), 1);
        // Convert so the resolved size is preserved across the toggle.
        const next: SizeParam =
          current.mode === "percent"
            ? { mode: "absolute", value: resolveSize(current, upstream) }
            : {
                mode: "percent",
                value: Math.min(100, Math.round((current.value / upstream) * 100)),
              };
        return { ...c, [field]: next };
      });
    });

    this.sizeInputs.set(field, { value, mode });
    return labeled(field, label, value, mode);
  }

  private buildOperatorField(
    field: OperatorField,
    label: string,
    kinds: string[],
  ): HTMLElement {
    const kind = el("select");
    for (const k of kinds) {
      const opt = el("option", undefined, k);
      opt.value = k;
      kind.appendChild(opt);
    }
    const params = el("span", "operator-params");
    kind.addEventListener("change", () => {
      this.store.edit((c) => ({
        ...c,
        [field]: defaultOperator(kind.value),
      }));
    });
    this.operatorBoxes.set(field, { kind, params });
    return labeled(field, label, kind, params);
  }

  private buildFlowColumn(): HTMLElement {
    const col = el("section", "panel-column");
    col.appendChild(el("h2", undefined, "Population flow"));
    this.barsSvg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
    this.barsSvg.setAttribute("viewBox", "0 0 720 300");
    this.barsSvg.setAttribute("class", "bars");
    this.barsSvg.addEventListener("pointerdown", (e) => this.onBarPointerDown(e));
    window.addEventListener("pointermove", (e) => this.onBarPointerMove(e));
    window.addEventListener("pointerup", () => {
      this.drag = null;
    });
    col.appendChild(this.barsSvg);
    col.appendChild(
      el(
        "p",
        "hint",
        "Drag a dashed bar to resize its field; values snap to whole individuals.",
      ),
    );
    return col;
  }

  private buildRunColumn(): HTMLElement {
    const col = el("section", "panel-column");
    col.appendChild(el("h2", undefined, "Run"));

    this.runForm = el("div", "run-form");
    const run = defaultRunSettings();
    const problem = defaultProblem();
    const mk = (name: string, label: string, value: number, step = 1): void => {
      const input = numberInput(value, step);
      input.dataset.run = name;
      this.runForm.appendChild(labeled(`run.${name}`, label, input));
    };
    const problemSelect = el("select");
    for (const k of ["onemax", "sphere", "rastrigin"]) {
      const opt = el("option", undefined, k);
      opt.value = k;
      problemSelect.appendChild(opt);
    }
    problemSelect.dataset.run = "problemKind";
    this.runForm.appendChild(labeled("run.problem", "Problem", problemSelect));
    mk("dimension", "Dimension", problem.kind === "onemax" ? problem.dimension : 10);
    mk("seed", "Seed", run.seed);
    mk("maxGenerations", "Max generations", run.maxGenerations);
    mk("crossoverProbability", "Crossover prob.", run.crossoverProbability, 0.05);
    mk("mutationProbability", "Mutation prob.", run.mutationProbability, 0.05);
    col.appendChild(this.runForm);

    this.runButton = el("button", "run-button", "Run") as HTMLButtonElement;
    this.runButton.addEventListener("click", () => {
      const values = this.readRunForm();
      this.store.startRun(values.run, values.problem).catch((error: unknown) => {
        this.statusLine.textContent = `run rejected: ${String(error)}`;
      });
    });
    col.appendChild(this.runButton);

    this.statusLine = el("p", "status-line", "");
    col.appendChild(this.statusLine);

    this.chartSvg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
    this.chartSvg.setAttribute(
      "viewBox",
      `0 0 ${DEFAULT_GEOMETRY.width} ${DEFAULT_GEOMETRY.height}`,
    );
    this.chartSvg.setAttribute("class", "chart");
    col.appendChild(this.chartSvg);

    this.stopReasonLine = el("p", "stop-reason", "");
    col.appendChild(this.stopReasonLine);
    return col;
  }

  private readRunForm(): RunFormValues {
    const get = (name: string): number => {
      const input = this.runForm.querySelector<HTMLInputElement>(`input[data-run="${name}"]`);
      const v = input?.valueAsNumber;
      return v === undefined || Number.isNaN(v) ? 0 : v;
    };
    const kindSel = this.runForm.querySelector<HTMLSelectElement>(
      'select[data-run="problemKind"]',
    );
    const dimension = Math.max(1, Math.round(get("dimension")));
    const kind = kindSel?.value ?? "onemax";
    const problem: ProblemSpec =
      kind === "sphere"
        ? { kind: "sphere", dimension, bounds: [-5, 5], mutationSigma: 0.3 }
        : kind === "rastrigin"
          ? { kind: "rastrigin", dimension, bounds: [-5.12, 5.12], mutationSigma: 0.3 }
          : { kind: "onemax", dimension, bitFlipRate: 1 / dimension };
    return {
      run: {
        seed: Math.round(get("seed")),
        maxGenerations: Math.max(1, Math.round(get("maxGenerations"))),
        crossoverProbability: get("crossoverProbability"),
        mutationProbability: get("mutationProbability"),
      },
      problem,
    };
  }

  private editNumber(
    input: HTMLInputElement,
    apply: (c: EngineConfig, v: number) => EngineConfig,
  ): void {
    const v = input.valueAsNumber;
    if (Number.isNaN(v)) {
      return;
    }
    this.store.edit((c) => apply(c, v));
  }

  // Bars are 240px tall at scale: units per pixel derives from the
  // largest bar so drags track what is on screen.
  private onBarPointerDown(e: PointerEvent): void {
    const target = e.target as Element | null;
    const rect = target?.closest<SVGRectElement>("rect[data-field]");
    if (rect === null || rect === undefined) {
      return;
    }
    const field = rect.dataset.field as SizeField;
    const config = this.store.getState().config;
    const param = config[field];
    const upstream = Math.max(SIZE_UPSTREAM[field](config), 1);
    const maxTotal = Math.max(...barModel(config).map((b) => b.total), 1);
    this.drag = {
      field,
      mode: param.mode,
      startValue: param.value,
      startY: e.clientY,
      unitsPerPixel: maxTotal / 240,
      upstream,
    };
    e.preventDefault();
  }

  private onBarPointerMove(e: PointerEvent): void {
    if (this.drag === null) {
      return;
    }
    const d = this.drag;
    const deltaUnits = (d.startY - e.clientY) * d.unitsPerPixel;
    this.store.edit((c) => {
      const next: SizeParam =
        d.mode === "percent"
          ? {
              mode: "percent",
              value: snapPercent(d.startValue, (deltaUnits / d.upstream) * 100),
            }
          : { mode: "absolute", value: snapAbsolute(d.startValue, deltaUnits) };
      return { ...c, [d.field]: next };
    });
  }

  private render(state: PanelState): void {
    const paradigm = state.checking ? "…" : (state.paradigm ?? "—");
    this.paradigmBadge.textContent = paradigm;
    this.paradigmBadge.classList.toggle("infeasible", !state.feasible && !state.checking);

    syncValue(this.popSizeInput, String(state.config.popSize));
    syncValue(this.senseSelect, state.config.sense);
    syncValue(this.eliteModeSelect, state.config.elitism.mode);
    syncValue(this.eliteSizeInput, String(state.config.elitism.eliteSize));
    for (const [field, widgets] of this.sizeInputs) {
      const param = state.config[field];
      syncValue(widgets.value, String(param.value));
      widgets.mode.textContent = param.mode === "percent" ? "%" : "#";
    }
    for (const [field, widgets] of this.operatorBoxes) {
      const spec = state.config[field];
      syncValue(widgets.kind, spec.kind);
      this.renderOperatorParams(field, spec);
    }

    const highlighted = highlightedFields(state.violations);
    for (const row of this.root.querySelectorAll<HTMLElement>(".field-row[data-field]")) {
      const name = row.dataset.field ?? "";
      row.classList.toggle("violation", highlighted.has(name));
    }

    this.violationsBox.textContent = "";
    for (const violation of state.violations) {
      const item = el("div", "violation-item");
      item.appendChild(el("code", undefined, violation.code));
      item.appendChild(el("span", undefined, ` ${violation.message}`));
      this.violationsBox.appendChild(item);
    }
    if (state.transportError !== null) {
      this.violationsBox.appendChild(el("div", "violation-item", state.transportError));
    }

    this.runButton.disabled = !canRun(state);
    this.renderBars(state.config, highlighted);
    this.renderRun(state);
  }

  private renderOperatorParams(field: OperatorField, spec: SelectorSpec | ReducerSpec): void {
    const box = this.operatorBoxes.get(field);
    if (box === undefined) {
      return;
    }
    const wanted = operatorParamName(spec.kind);
    const existing = box.params.querySelector<HTMLInputElement>("input");
    if (wanted === null) {
      box.params.textContent = "";
      return;
    }
    if (existing !== null && existing.dataset.param === wanted) {
      const current = (spec as unknown as Record<string, number>)[wanted];
      syncValue(existing, String(current));
      return;
    }
    box.params.textContent = "";
    const current = (spec as unknown as Record<string, number>)[wanted];
    const input = numberInput(current ?? 0, wanted === "tournamentSize" ? 1 : 0.05);
    input.dataset.param = wanted;
    input.addEventListener("input", () => {
      const v = input.valueAsNumber;
      if (Number.isNaN(v)) {
        return;
      }
      this.store.edit((c) => {
        const op = { ...(c[field] as unknown as Record<string, unknown>) };
        op[wanted] = wanted === "tournamentSize" ? Math.max(1, Math.round(v)) : v;
        return { ...c, [field]: op as unknown as SelectorSpec };
      });
    });
    box.params.appendChild(input);
  }

  private renderBars(config: EngineConfig, highlighted: Set<string>): void {
    const bars = barModel(config);
    const maxTotal = Math.max(...bars.map((b) => b.total), 1);
    const width = 720;
    const height = 300;
    const baseline = height - 36;
    const usable = 240;
    const slot = width / bars.length;
    const barWidth = slot * 0.62;

    const ns = "http://www.w3.org/2000/svg";
    this.barsSvg.textContent = "";
    bars.forEach((b, i) => {
      const x = i * slot + (slot - barWidth) / 2;
      let y = baseline;
      const group = document.createElementNS(ns, "g");
      for (const segment of b.segments) {
        const h = (segment.value / maxTotal) * usable;
        y -= h;
        const rect = document.createElementNS(ns, "rect");
        rect.setAttribute("x", String(x));
        rect.setAttribute("y", String(y));
        rect.setAttribute("width", String(barWidth));
        rect.setAttribute("height", String(Math.max(h, 0)));
        rect.setAttribute("class", `bar-${segment.origin}`);
        if (b.field !== null) {
          rect.dataset.field = b.field;
          rect.classList.add("draggable");
          if (highlighted.has(b.field)) {
            rect.classList.add("violation");
          }
        }
        group.appendChild(rect);
      }
      const count = document.createElementNS(ns, "text");
      count.setAttribute("x", String(x + barWidth / 2));
      count.setAttribute("y", String(y - 6));
      count.setAttribute("class", "bar-count");
      count.textContent = String(b.total);
      group.appendChild(count);

      const label = document.createElementNS(ns, "text");
      label.setAttribute("x", String(x + barWidth / 2));
      label.setAttribute("y", String(baseline + 16));
      label.setAttribute("class", "bar-label");
      label.textContent = b.label;
      group.appendChild(label);
      this.barsSvg.appendChild(group);
    });
  }

  private renderRun(state: PanelState): void {
    const run = state.run;
    if (run === null) {
      this.statusLine.textContent = state.checking ? "validating…" : "";
      return;
    }
    if (run.status === "running") {
      this.statusLine.textContent = `running… generation ${
        run.points.length > 0 ? run.points[run.points.length - 1]!.generation : 0
      }`;
    } else if (run.status === "failed") {
      this.statusLine.textContent = `failed: ${run.error ?? "unknown error"}`;
    } else {
      const best = run.points.length > 0 ? run.points[run.points.length - 1]!.bestFitness : NaN;
      this.statusLine.textContent = `finished, best ${best}`;
    }
    this.stopReasonLine.textContent =
      run.stopReason !== null ? `stop reason: ${run.stopReason}` : "";

    const chart = fitnessChart(run.points);
    const ns = "http://www.w3.org/2000/svg";
    this.chartSvg.textContent = "";
    const mean = document.createElementNS(ns, "path");
    mean.setAttribute("d", chart.meanPath);
    mean.setAttribute("class", "curve-mean");
    const bestPath = document.createElementNS(ns, "path");
    bestPath.setAttribute("d", chart.bestPath);
    bestPath.setAttribute("class", "curve-best");
    this.chartSvg.appendChild(mean);
    this.chartSvg.appendChild(bestPath);
  }
}

function operatorParamName(kind: string): "pressure" | "tournamentSize" | "probability" | null {
  switch (kind) {
    case "roulette-wheel":
    case "linear-ranking":
      return "pressure";
    case "deterministic-tournament":
    case "ep-tournament":
      return "tournamentSize";
    case "stochastic-tournament":
      return "probability";
    default:
      return null;
  }
}

function defaultOperator(kind: string): SelectorSpec | ReducerSpec {
  switch (kind) {
    case "roulette-wheel":
      return { kind, pressure: 2.0 };
    case "linear-ranking":
      return { kind, pressure: 1.8 };
    case "deterministic-tournament":
      return { kind, tournamentSize: 2 };
    case "stochastic-tournament":
      return { kind, probability: 0.75 };
    case "ep-tournament":
      return { kind, tournamentSize: 6 };
    case "random":
      return { kind };
    default:
      return { kind: "sequential" };
  }
}
