/** Rebuild a convergence table from dumps written by the driver's
 * refinement harness.  Each dump carries the measured errors as header
 * entries (err_u / err_B / err_A); the log2 orders are recomputed here
 * from those values, so they agree with the driver's own table exactly
 * up to floating-point evaluation of log2. */

import { Dump } from "./dump.js";

export interface TableRow {
  n: number;
  err_u: number;
  err_B: number;
  err_A: number;
  order_u?: number;
  order_B?: number;
  order_A?: number;
}

const COLS = ["u", "B", "A"] as const;

function headerError(dump: Dump, key: string): number {
  const v = dump.header[key];
  if (typeof v !== "number") {
    throw new Error(`dump header missing numeric '${key}' ` +
      "(was it written by the convergence harness?)");
  }
  return v;
}

export function convergenceRows(dumps: Dump[]): TableRow[] {
  const sorted = [...dumps].sort((a, b) => a.header.nx - b.header.nx);
  const rows: TableRow[] = [];
  for (const d of sorted) {
    const row: TableRow = {
      n: d.header.nx,
      err_u: headerError(d, "err_u"),
      err_B: headerError(d, "err_B"),
      err_A: headerError(d, "err_A"),
    };
    const prev = rows[rows.length - 1];
    if (prev) {
      for (const c of COLS) {
        const ratio = prev[`err_${c}`] / Math.max(row[`err_${c}`], 1e-300);
        row[`order_${c}`] = Math.log2(ratio);
      }
    }
    rows.push(row);
  }
  return rows;
}

function cell(err: number, order: number | undefined): string {
  const e = err.toExponential(4);
  const o = order === undefined ? "   ---" : order.toFixed(2).padStart(6);
  return `  ${e.padStart(11)} ${o}`;
}

export function formatTable(rows: TableRow[]): string {
  const head = "    n " + COLS
    .map((c) => `  ${("err_" + c).padStart(11)} ${"order".padStart(6)}`)
    .join("");
  const lines = [head];
  for (const r of rows) {
    lines.push(
      `${String(r.n).padStart(5)} ` +
        COLS.map((c) => cell(r[`err_${c}`], r[`order_${c}`])).join(""),
    );
  }
  return lines.join("\n");
}
