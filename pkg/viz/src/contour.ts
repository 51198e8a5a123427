/** Contour extraction at a fixed number of equally spaced levels, mapped
 * through the dump's (possibly curvilinear) grid coordinates. */

import { contours } from "d3-contour";

import { Dump, getVariable } from "./dump.js";

export interface ContourSet {
  levels: number[];
  /** one entry per level: list of rings, each a list of (x, y) points */
  rings: Array<Array<Array<[number, number]>>>;
  /** set when the field is (numerically) constant and nothing was drawn */
  degenerate: boolean;
}

/** n equally spaced interior levels of [lo, hi]. */
export function spacedLevels(lo: number, hi: number, n: number): number[] {
  const out: number[] = [];
  for (let k = 1; k <= n; k++) {
    out.push(lo + (k * (hi - lo)) / (n + 1));
  }
  return out;
}

/** Bilinear sample of a row-major field at fractional index (fi, fj). */
export function sampleIndex(field: Float64Array, nx: number, ny: number,
                            fi: number, fj: number): number {
  const ci = Math.min(Math.max(fi, 0), nx - 1);
  const cj = Math.min(Math.max(fj, 0), ny - 1);
  const i0 = Math.min(Math.floor(ci), nx - 2);
  const j0 = Math.min(Math.floor(cj), ny - 2);
  const ti = ci - i0;
  const tj = cj - j0;
  const v00 = field[j0 * nx + i0];
  const v10 = field[j0 * nx + i0 + 1];
  const v01 = field[(j0 + 1) * nx + i0];
  const v11 = field[(j0 + 1) * nx + i0 + 1];
  return (1 - tj) * ((1 - ti) * v00 + ti * v10)
    + tj * ((1 - ti) * v01 + ti * v11);
}

export function computeContours(dump: Dump, variable: string,
                                nLevels: number,
                                range?: [number, number]): ContourSet {
  const values = getVariable(dump, variable);
  const { nx, ny } = dump;
  let lo: number, hi: number;
  if (range) {
    [lo, hi] = range;
  } else {
    lo = Infinity;
    hi = -Infinity;
    for (const v of values) {
      if (v < lo) lo = v;
      if (v > hi) hi = v;
    }
  }
  const span = hi - lo;
  if (!(span > 0) || span <= 1e-300 * Math.max(Math.abs(lo), 1)) {
    return { levels: [], rings: [], degenerate: true };
  }
  const levels = spacedLevels(lo, hi, nLevels);
  const x = getVariable(dump, "x");
  const y = getVariable(dump, "y");
  const gen = contours().size([nx, ny]).thresholds(levels);
  const multis = gen(Array.from(values));
  const rings: ContourSet["rings"] = levels.map(() => []);
  for (const multi of multis) {
    const li = levels.findIndex((l) => l === multi.value);
    if (li < 0) {
      continue;
    }
    for (const polygon of multi.coordinates) {
      for (const ring of polygon) {
        // d3 grid coordinates put value (i, j) at (i + 0.5, j + 0.5)
        rings[li].push(
          ring.map(([gi, gj]) => [
            sampleIndex(x, nx, ny, gi - 0.5, gj - 0.5),
            sampleIndex(y, nx, ny, gi - 0.5, gj - 0.5),
          ] as [number, number]),
        );
      }
    }
  }
  return { levels, rings, degenerate: false };
}
