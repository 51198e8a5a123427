/** 1D cuts through a dump: variable along a grid row or column, with the
 * abscissa optionally projected onto a direction (for solutions rotated
 * relative to the grid), and an optional zoom panel. */

import { Dump, getVariable } from "./dump.js";

export interface CutOptions {
  /** "x": fix a row (index j) and sweep i; "y": fix a column. */
  axis: "x" | "y";
  /** row/column index; defaults to the middle. */
  index?: number;
  /** unit direction the position is projected onto; default [1, 0]. */
  projection?: [number, number];
}

export interface Cut {
  s: Float64Array;
  v: Float64Array;
}

export function lineCut(dump: Dump, variable: string,
                        opts: CutOptions): Cut {
  const { nx, ny } = dump;
  const x = getVariable(dump, "x");
  const y = getVariable(dump, "y");
  const values = getVariable(dump, variable);
  const [px, py] = opts.projection ?? [1, 0];
  const norm = Math.hypot(px, py);
  if (!(norm > 0)) {
    throw new Error("projection direction must be nonzero");
  }
  const n = opts.axis === "x" ? nx : ny;
  const fixedMax = opts.axis === "x" ? ny : nx;
  const idx = opts.index ?? Math.floor(fixedMax / 2);
  if (idx < 0 || idx >= fixedMax) {
    throw new Error(`cut index ${idx} out of range [0, ${fixedMax})`);
  }
  const s = new Float64Array(n);
  const v = new Float64Array(n);
  for (let k = 0; k < n; k++) {
    const q = opts.axis === "x" ? idx * nx + k : k * nx + idx;
    s[k] = (px * x[q] + py * y[q]) / norm;
    v[k] = values[q];
  }
  return { s, v };
}
