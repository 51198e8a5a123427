/**
 * Reader for curvmhd field dumps.
 *
 * A dump is one UTF-8 JSON header line terminated by `\n`, followed by the
 * raw arrays as little-endian 64-bit floats, row-major (eta outer, xi
 * inner), concatenated in the header's declared variable order.
 */

import { readFileSync } from "node:fs";
import { z } from "zod";

export const SCHEMA_VERSION = 1;

const headerSchema = z
  .object({
    schema: z.number(),
    problem: z.string(),
    time: z.number(),
    step: z.number().int(),
    nx: z.number().int().positive(),
    ny: z.number().int().positive(),
    variables: z.array(z.string()).nonempty(),
  })
  .passthrough();

export type DumpHeader = z.infer<typeof headerSchema> &
  Record<string, unknown>;

export interface Dump {
  header: DumpHeader;
  /** (ny * nx) arrays keyed by header variable name, row-major. */
  fields: Map<string, Float64Array>;
  nx: number;
  ny: number;
}

export function readDump(path: string): Dump {
  const buf = readFileSync(path);
  const nl = buf.indexOf(0x0a);
  if (nl < 0) {
    throw new Error(`${path}: missing header line`);
  }
  const header = headerSchema.parse(
    JSON.parse(buf.subarray(0, nl).toString("utf-8")),
  ) as DumpHeader;
  if (header.schema !== SCHEMA_VERSION) {
    throw new Error(`${path}: unsupported dump schema ${header.schema}`);
  }
  const { nx, ny } = header;
  const count = nx * ny;
  const fields = new Map<string, Float64Array>();
  let off = nl + 1;
  const view = new DataView(buf.buffer, buf.byteOffset, buf.byteLength);
  for (const name of header.variables) {
    if (off + 8 * count > buf.length) {
      throw new Error(`${path}: truncated dump: array '${name}'`);
    }
    const arr = new Float64Array(count);
    for (let k = 0; k < count; k++) {
      arr[k] = view.getFloat64(off + 8 * k, true);
    }
    fields.set(name, arr);
    off += 8 * count;
  }
  return { header, fields, nx, ny };
}

/** Fetch a stored or derived variable as a row-major (ny*nx) array. */
export function getVariable(dump: Dump, name: string): Float64Array {
  const stored = dump.fields.get(name);
  if (stored) {
    return stored;
  }
  const need = (v: string): Float64Array => {
    const a = dump.fields.get(v);
    if (!a) {
      throw new Error(`variable '${v}' not in dump`);
    }
    return a;
  };
  const n = dump.nx * dump.ny;
  const out = new Float64Array(n);
  switch (name) {
    case "babs": {
      const [b1, b2, b3] = [need("b1"), need("b2"), need("b3")];
      for (let k = 0; k < n; k++) {
        out[k] = Math.hypot(b1[k], b2[k], b3[k]);
      }
      return out;
    }
    case "lnrho": {
      const rho = need("rho");
      for (let k = 0; k < n; k++) {
        out[k] = Math.log(rho[k]);
      }
      return out;
    }
    default:
      throw new Error(`unknown variable '${name}'`);
  }
}
