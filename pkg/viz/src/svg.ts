/** Minimal deterministic SVG assembly: fixed size, fixed precision, no
 * timestamps, attributes emitted in a stable order. */

export const WIDTH = 800;
export const HEIGHT = 800;

export function fmt(v: number): string {
  if (!Number.isFinite(v)) {
    throw new Error(`non-finite coordinate ${v}`);
  }
  // shortest stable form at 8 significant digits
  return Number(v.toPrecision(8)).toString();
}

export interface Box {
  x0: number;
  x1: number;
  y0: number;
  y1: number;
}

export function dataBox(xs: Iterable<number>, ys: Iterable<number>): Box {
  let x0 = Infinity, x1 = -Infinity, y0 = Infinity, y1 = -Infinity;
  for (const v of xs) {
    if (v < x0) x0 = v;
    if (v > x1) x1 = v;
  }
  for (const v of ys) {
    if (v < y0) y0 = v;
    if (v > y1) y1 = v;
  }
  return { x0, x1, y0, y1 };
}

/** Map data coordinates into a pixel rectangle, y axis pointing up. */
export function scaler(box: Box, px0: number, px1: number, py0: number,
                       py1: number) {
  const sx = (px1 - px0) / (box.x1 - box.x0 || 1);
  const sy = (py1 - py0) / (box.y1 - box.y0 || 1);
  return (x: number, y: number): [number, number] => [
    px0 + (x - box.x0) * sx,
    py1 - (y - box.y0) * sy,
  ];
}

export function svgDocument(body: string[], width = WIDTH,
                            height = HEIGHT): string {
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" ` +
      `height="${height}" viewBox="0 0 ${width} ${height}">`,
    `<rect x="0" y="0" width="${width}" height="${height}" fill="white"/>`,
    ...body,
    "</svg>",
    "",
  ].join("\n");
}

export function polyline(points: Array<[number, number]>, stroke: string,
                         strokeWidth = 1): string {
  const pts = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
  return `<polyline points="${pts}" fill="none" stroke="${stroke}" ` +
    `stroke-width="${strokeWidth}"/>`;
}

export function textLabel(x: number, y: number, text: string,
                          size = 14): string {
  return `<text x="${fmt(x)}" y="${fmt(y)}" font-family="monospace" ` +
    `font-size="${size}">${text}</text>`;
}
