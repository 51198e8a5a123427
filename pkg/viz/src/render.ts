/** Turn a plot spec into an image file: SVG for contours and line cuts,
 * binary PGM for Schlieren shadings.  Output bytes depend only on the
 * spec and the dump contents. */

import { writeFileSync } from "node:fs";

import { computeContours } from "./contour.js";
import { Dump, getVariable, readDump } from "./dump.js";
import { lineCut } from "./linecut.js";
import { schlierenShading, toPGM } from "./schlieren.js";
import { PlotSpec } from "./spec.js";
import {
  HEIGHT, WIDTH, dataBox, fmt, polyline, scaler, svgDocument, textLabel,
} from "./svg.js";

const MARGIN = 40;

function renderContour(dump: Dump, spec: PlotSpec): string {
  const set = computeContours(dump, spec.plot.variable,
                              spec.contour.levels, spec.contour.range);
  if (set.degenerate) {
    console.warn(`warning: '${spec.plot.variable}' is constant; ` +
      "nothing to contour");
    return svgDocument([
      textLabel(MARGIN, HEIGHT / 2,
                `constant field: ${spec.plot.variable}`),
    ]);
  }
  const x = getVariable(dump, "x");
  const y = getVariable(dump, "y");
  const box = dataBox(x, y);
  const to = scaler(box, MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN);
  const body: string[] = [];
  for (const levelRings of set.rings) {
    for (const ring of levelRings) {
      body.push(polyline(ring.map(([px, py]) => to(px, py)), "black"));
    }
  }
  body.push(textLabel(MARGIN, MARGIN - 12,
                      `${spec.plot.variable}, ${set.levels.length} levels, ` +
                        `t=${dump.header.time}`));
  return svgDocument(body);
}

function cutPanel(s: Float64Array, v: Float64Array, px0: number,
                  px1: number, py0: number, py1: number,
                  window?: [number, number]): string[] {
  let pts: Array<[number, number]> = [];
  const idx: number[] = [];
  for (let k = 0; k < s.length; k++) {
    if (!window || (s[k] >= window[0] && s[k] <= window[1])) {
      idx.push(k);
    }
  }
  if (idx.length < 2) {
    throw new Error("zoom window selects fewer than two points");
  }
  const box = dataBox(idx.map((k) => s[k]), idx.map((k) => v[k]));
  const to = scaler(box, px0, px1, py0, py1);
  pts = idx.map((k) => to(s[k], v[k]));
  const frame =
    `<rect x="${fmt(px0)}" y="${fmt(py0)}" width="${fmt(px1 - px0)}" ` +
    `height="${fmt(py1 - py0)}" fill="none" stroke="black"/>`;
  return [frame, polyline(pts, "black", 1.2)];
}

function renderLineCut(dump: Dump, spec: PlotSpec): string {
  const { s, v } = lineCut(dump, spec.plot.variable, {
    axis: spec.linecut.axis,
    index: spec.linecut.index,
    projection: spec.linecut.projection,
  });
  const body = cutPanel(s, v, MARGIN, WIDTH - MARGIN, MARGIN,
                        HEIGHT - MARGIN);
  if (spec.linecut.zoom) {
    body.push(...cutPanel(s, v, WIDTH - 340, WIDTH - 60, 70, 280,
                          spec.linecut.zoom));
    body.push(textLabel(WIDTH - 340, 64,
                        `zoom [${spec.linecut.zoom[0]}, ` +
                          `${spec.linecut.zoom[1]}]`, 12));
  }
  body.push(textLabel(MARGIN, MARGIN - 12,
                      `${spec.plot.variable} cut, t=${dump.header.time}`));
  return svgDocument(body);
}

export function render(spec: PlotSpec): string {
  const dump = readDump(spec.plot.dump);
  const out = spec.plot.output;
  if (spec.plot.style === "schlieren") {
    const shade = schlierenShading(dump, spec.plot.variable,
                                   spec.schlieren.k);
    writeFileSync(out, toPGM(shade, dump.nx, dump.ny));
    return out;
  }
  const svg = spec.plot.style === "contour"
    ? renderContour(dump, spec)
    : renderLineCut(dump, spec);
  writeFileSync(out, svg);
  return out;
}
