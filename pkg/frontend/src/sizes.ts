/**
 * Client-side mirror of the engine's size arithmetic.
 *
 * Bar heights must be a pure function of the engine config, so the
 * percent rounding here has to agree exactly with the server
 * (round half up, never banker's rounding).
 */

import type { EngineConfig, SizeParam } from "./types.js";

export function resolveSize(param: SizeParam, upstream: number): number {
  if (param.mode === "absolute") {
    return Math.trunc(param.value);
  }
  return Math.floor((param.value * upstream) / 100 + 0.5);
}

export interface ResolvedSizes {
  popSize: number;
  fertile: number;
  offspring: number;
  eliteSeats: number;
  nep: number;
  reducedNep: number;
  reducedOffspring: number;
  intermediate: number;
}

export function resolvedSizes(config: EngineConfig): ResolvedSizes {
  const popSize = config.popSize;
  const eliteSeats =
    config.elitism.mode === "strong" && config.elitism.eliteSize > 0
      ? config.elitism.eliteSize
      : 0;
  const nep = Math.max(popSize - eliteSeats, 0);
  const offspring = resolveSize(config.offspringSize, popSize);
  const reducedNep = resolveSize(config.reducedNepSize, nep);
  const reducedOffspring = resolveSize(config.reducedOffspringSize, offspring);
  return {
    popSize,
    fertile: resolveSize(config.fertile, popSize),
    offspring,
    eliteSeats,
    nep,
    reducedNep,
    reducedOffspring,
    intermediate: reducedNep + reducedOffspring,
  };
}

export type BarOrigin = "parent" | "offspring" | "mixed";

export interface BarSegment {
  origin: BarOrigin;
  value: number;
}

export interface Bar {
  /** Stable identity for rendering. */
  key: string;
  label: string;
  /** Config field a drag on this bar resizes; null for derived bars. */
  field: keyof EngineConfig | null;
  segments: BarSegment[];
  total: number;
}

function bar(
  key: string,
  label: string,
  field: keyof EngineConfig | null,
  segments: BarSegment[],
): Bar {
  return {
    key,
    label,
    field,
    segments,
    total: segments.reduce((acc, s) => acc + s.value, 0),
  };
}

/** The eight population bars of the flow diagram, left to right. */
export function barModel(config: EngineConfig): Bar[] {
  const sizes = resolvedSizes(config);
  return [
    bar("initPop", "Init. Pop.", null, [{ origin: "parent", value: sizes.popSize }]),
    bar("fertile", "Fertile", "fertile", [{ origin: "parent", value: sizes.fertile }]),
    bar("offspring", "Offspring", "offspringSize", [
      { origin: "offspring", value: sizes.offspring },
    ]),
    bar("nep", "N.E.P.", null, [{ origin: "parent", value: sizes.nep }]),
    bar("reducedNep", "Red. N.E.P.", "reducedNepSize", [
      { origin: "parent", value: sizes.reducedNep },
    ]),
    bar("reducedOffspring", "Red. Offspring", "reducedOffspringSize", [
      { origin: "offspring", value: sizes.reducedOffspring },
    ]),
    bar("intermed", "Intermed. Pop.", null, [
      { origin: "parent", value: sizes.reducedNep },
      { origin: "offspring", value: sizes.reducedOffspring },
    ]),
    bar("newPop", "New Pop.", null, [{ origin: "mixed", value: sizes.popSize }]),
  ];
}

/**
 * Snap a drag-resize to a whole individual count.
 * deltaUnits is the drag distance already converted to individuals.
 */
export function snapAbsolute(startValue: number, deltaUnits: number): number {
  return Math.max(0, Math.round(startValue + deltaUnits));
}

/** Snap a drag-resize on a percent-mode field to a whole percent in [0, 100]. */
export function snapPercent(startValue: number, deltaPercent: number): number {
  return Math.min(100, Math.max(0, Math.round(startValue + deltaPercent)));
}
