/** Startup values for the panel: a plain generational GA shape. */

import type { EngineConfig, ProblemSpec, RunSettings } from "./types.js";

export function defaultConfig(): EngineConfig {
  return {
    popSize: 30,
    sense: "maximize",
    fertile: { mode: "percent", value: 100 },
    offspringSize: { mode: "percent", value: 100 },
    parentSelector: { kind: "deterministic-tournament", tournamentSize: 2 },
    nepReducer: { kind: "sequential" },
    reducedNepSize: { mode: "absolute", value: 0 },
    offspringReducer: { kind: "sequential" },
    reducedOffspringSize: { mode: "percent", value: 100 },
    finalReducer: { kind: "sequential" },
    elitism: { mode: "weak", eliteSize: 1 },
  };
}

export function defaultRunSettings(): RunSettings {
  return {
    seed: 1,
    maxGenerations: 100,
    crossoverProbability: 0.9,
    mutationProbability: 1.0,
  };
}

export function defaultProblem(): ProblemSpec {
  return { kind: "onemax", dimension: 40, bitFlipRate: 0.025 };
}
