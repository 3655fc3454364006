/** Pure SVG path construction for the per-generation fitness chart. */

import type { GenerationStats } from "./types.js";

export interface ChartGeometry {
  width: number;
  height: number;
  padding: number;
}

export const DEFAULT_GEOMETRY: ChartGeometry = { width: 560, height: 240, padding: 28 };

/**
 * Linear scale mapping [d0, d1] onto [r0, r1].
 * A degenerate domain maps everything to the range midpoint.
 */
export function scaleLinear(
  d0: number,
  d1: number,
  r0: number,
  r1: number,
): (x: number) => number {
  if (d1 === d0) {
    const mid = (r0 + r1) / 2;
    return () => mid;
  }
  const slope = (r1 - r0) / (d1 - d0);
  return (x: number) => r0 + (x - d0) * slope;
}

function fmt(n: number): string {
  return String(Math.round(n * 100) / 100);
}

/** Polyline path through the points; empty string for no points. */
export function linePath(xs: number[], ys: number[]): string {
  const n = Math.min(xs.length, ys.length);
  if (n === 0) {
    return "";
  }
  const parts: string[] = [];
  for (let i = 0; i < n; i += 1) {
    const cmd = i === 0 ? "M" : "L";
    parts.push(`${cmd}${fmt(xs[i]!)},${fmt(ys[i]!)}`);
  }
  return parts.join("");
}

export interface FitnessChart {
  bestPath: string;
  meanPath: string;
  xMax: number;
  yMin: number;
  yMax: number;
}

/** Best and mean fitness curves over the run history. */
export function fitnessChart(
  points: GenerationStats[],
  geom: ChartGeometry = DEFAULT_GEOMETRY,
): FitnessChart {
  if (points.length === 0) {
    return { bestPath: "", meanPath: "", xMax: 0, yMin: 0, yMax: 0 };
  }
  const values = points.flatMap((p) => [p.bestFitness, p.meanFitness]);
  const yMin = Math.min(...values);
  const yMax = Math.max(...values);
  const xMax = points[points.length - 1]!.generation;
  const sx = scaleLinear(0, xMax, geom.padding, geom.width - geom.padding);
  // SVG y grows downward, so flip the range.
  const sy = scaleLinear(yMin, yMax, geom.height - geom.padding, geom.padding);
  const xs = points.map((p) => sx(p.generation));
  return {
    bestPath: linePath(xs, points.map((p) => sy(p.bestFitness))),
    meanPath: linePath(xs, points.map((p) => sy(p.meanFitness))),
    xMax,
    yMin,
    yMax,
  };
}
