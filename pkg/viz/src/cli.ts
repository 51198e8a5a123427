#!/usr/bin/env node
/** viz: render plots and tables from curvmhd field dumps.
 *
 *   viz render --spec plot.toml
 *   viz table --dumps a.dump b.dump c.dump
 */

import yargs from "yargs";
import { hideBin } from "yargs/helpers";

import { readDump } from "./dump.js";
import { render } from "./render.js";
import { loadSpec } from "./spec.js";
import { convergenceRows, formatTable } from "./table.js";

export async function main(argv: string[]): Promise<number> {
  let code = 0;
  try {
      await yargs(argv)
      .scriptName("viz")
      .command(
        "render",
        "render a plot spec to an image file",
        (y) => y.option("spec", { type: "string", demandOption: true }),
        (args) => {
          const out = render(loadSpec(args.spec));
          console.log(`wrote ${out}`);
        },
      )
      .command(
        "table",
        "convergence table from refinement-study dumps",
        (y) => y.option("dumps", {
          type: "string",
          array: true,
          demandOption: true,
        }),
        (args) => {
          console.log(
            formatTable(convergenceRows(args.dumps.map(readDump))));
        },
      )
      .demandCommand(1)
      .strict()
      .fail((msg, err) => {
        console.error(`error: ${err?.message ?? msg}`);
        code = 2;
      })
      .parse();
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    code = 2;
  }
  return code;
}

const invokedDirectly = process.argv[1]
  && import.meta.url.endsWith(process.argv[1].split("/").pop()!);
if (invokedDirectly) {
  main(hideBin(process.argv)).then((code) => {
    process.exitCode = code;
  });
}
