/** Wire types mirroring the engine's canonical JSON schema (camelCase). */

export type Sense = "maximize" | "minimize";

export type SizeMode = "absolute" | "percent";

export interface SizeParam {
  mode: SizeMode;
  value: number;
}

export type SelectorSpec =
  | { kind: "roulette-wheel"; pressure: number }
  | { kind: "linear-ranking"; pressure: number }
  | { kind: "deterministic-tournament"; tournamentSize: number }
  | { kind: "stochastic-tournament"; probability: number }
  | { kind: "random" }
  | { kind: "sequential" };

export type ReducerSpec =
  | { kind: "sequential" }
  | { kind: "random" }
  | { kind: "deterministic-tournament"; tournamentSize: number }
  | { kind: "stochastic-tournament"; probability: number }
  | { kind: "ep-tournament"; tournamentSize: number };

export type ElitismMode = "strong" | "weak";

export interface ElitismSpec {
  mode: ElitismMode;
  eliteSize: number;
}

export interface EngineConfig {
  popSize: number;
  sense: Sense;
  fertile: SizeParam;
  offspringSize: SizeParam;
  parentSelector: SelectorSpec;
  nepReducer: ReducerSpec;
  reducedNepSize: SizeParam;
  offspringReducer: ReducerSpec;
  reducedOffspringSize: SizeParam;
  finalReducer: ReducerSpec;
  elitism: ElitismSpec;
}

export interface Violation {
  code: string;
  message: string;
  offendingField: string;
}

export interface ValidationReport {
  feasible: boolean;
  violations: Violation[];
}

export type Paradigm = "gga" | "ssga" | "es-comma" | "es-plus" | "ep" | "custom";

export interface PresetParams {
  popSize: number;
  lambda?: number;
  offspringCount?: number;
  selector?: SelectorSpec;
  weakElite?: number;
}

export interface RunSettings {
  seed: number;
  maxGenerations: number;
  crossoverProbability: number;
  mutationProbability: number;
  targetFitness?: number;
  stagnationGenerations?: number;
}

export type ProblemSpec =
  | { kind: "onemax"; dimension: number; bitFlipRate: number }
  | { kind: "sphere"; dimension: number; bounds: [number, number]; mutationSigma: number }
  | { kind: "rastrigin"; dimension: number; bounds: [number, number]; mutationSigma: number };

export interface Experiment {
  engine: EngineConfig;
  run: RunSettings;
  problem: ProblemSpec;
}

export interface GenerationStats {
  generation: number;
  bestFitness: number;
  meanFitness: number;
  worstFitness: number;
  evaluations: number;
}

export type RunStatus = "running" | "finished" | "failed";

export interface RunSnapshot {
  runId: string;
  status: RunStatus;
  history: GenerationStats[];
  stopReason?: string;
  best?: number;
  error?: string;
}
