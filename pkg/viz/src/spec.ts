/** Plot specification: a small TOML file selecting a dump, a variable, a
 * style, and an output path. */

import { readFileSync } from "node:fs";
import { parse } from "smol-toml";
import { z } from "zod";

const plotSpecSchema = z.object({
  plot: z.object({
    dump: z.string(),
    variable: z.string(),
    style: z.enum(["contour", "schlieren", "linecut"]),
    output: z.string(),
  }),
  contour: z
    .object({
      levels: z.number().int().positive().default(15),
      range: z.tuple([z.number(), z.number()]).optional(),
    })
    .default({ levels: 15 }),
  schlieren: z
    .object({
      k: z.number().positive().default(15),
    })
    .default({ k: 15 }),
  linecut: z
    .object({
      axis: z.enum(["x", "y"]).default("x"),
      index: z.number().int().nonnegative().optional(),
      projection: z.tuple([z.number(), z.number()]).optional(),
      zoom: z.tuple([z.number(), z.number()]).optional(),
    })
    .default({ axis: "x" }),
});

export type PlotSpec = z.infer<typeof plotSpecSchema>;

export function loadSpec(path: string): PlotSpec {
  return plotSpecSchema.parse(parse(readFileSync(path, "utf-8")));
}
