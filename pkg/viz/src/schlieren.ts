/** Numerical Schlieren shading: exp(-k |grad phi| / max |grad phi|),
 * written as a binary PGM image (deterministic bytes, no metadata). */

import { Dump, getVariable } from "./dump.js";

export const DEFAULT_K = 15;

/** Gradient magnitude in index space (central differences, one-sided at
 * the edges); adequate for shading purposes on smooth mappings. */
export function gradientMagnitude(values: Float64Array, nx: number,
                                  ny: number): Float64Array {
  const out = new Float64Array(nx * ny);
  for (let j = 0; j < ny; j++) {
    for (let i = 0; i < nx; i++) {
      const im = Math.max(i - 1, 0);
      const ip = Math.min(i + 1, nx - 1);
      const jm = Math.max(j - 1, 0);
      const jp = Math.min(j + 1, ny - 1);
      const gx = (values[j * nx + ip] - values[j * nx + im]) / (ip - im);
      const gy = (values[jp * nx + i] - values[jm * nx + i]) / (jp - jm);
      out[j * nx + i] = Math.hypot(gx, gy);
    }
  }
  return out;
}

export function schlierenShading(dump: Dump, variable: string,
                                 k = DEFAULT_K): Float64Array {
  const values = getVariable(dump, variable);
  const mag = gradientMagnitude(values, dump.nx, dump.ny);
  let max = 0;
  for (const v of mag) {
    if (v > max) max = v;
  }
  const out = new Float64Array(mag.length);
  for (let q = 0; q < mag.length; q++) {
    out[q] = max > 0 ? Math.exp((-k * mag[q]) / max) : 1;
  }
  return out;
}

/** Encode a shading in [0, 1] as an 8-bit binary PGM (P5), top row
 * first. */
export function toPGM(shade: Float64Array, nx: number, ny: number): Buffer {
  const head = Buffer.from(`P5\n${nx} ${ny}\n255\n`, "ascii");
  const pix = Buffer.alloc(nx * ny);
  for (let j = 0; j < ny; j++) {
    for (let i = 0; i < nx; i++) {
      // flip vertically: dumps are stored bottom row first
      const v = shade[(ny - 1 - j) * nx + i];
      pix[j * nx + i] = Math.max(0, Math.min(255, Math.round(255 * v)));
    }
  }
  return Buffer.concat([head, pix]);
}
