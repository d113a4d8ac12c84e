#!/usr/bin/env node
/**
 * render-figures: read aggregate sweep CSVs and write one SVG per figure.
 *
 * Usage:
 *   render-figures --csv-dir DIR --out-dir DIR [--figure NAME]
 *
 * Without --figure, every figure whose input CSVs are present in the
 * directory is rendered; figures with no inputs are skipped with a notice.
 * With --figure, missing inputs are an error.
 */

import { existsSync, mkdirSync, readFileSync, writeFileSync } from "fs";
import { join } from "path";

import { FIGURES, FIGURE_NAMES, renderFigure } from "./figures";

interface CliArgs {
  csvDir: string;
  outDir: string;
  figure: string | null;
}

export function parseArgs(argv: string[]): CliArgs {
  let csvDir: string | null = null;
  let outDir: string | null = null;
  let figure: string | null = null;
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    const next = () => {
      i += 1;
      if (i >= argv.length) throw new Error(`missing value for ${arg}`);
      return argv[i];
    };
    if (arg === "--csv-dir") csvDir = next();
    else if (arg === "--out-dir") outDir = next();
    else if (arg === "--figure") figure = next();
    else if (arg === "--help" || arg === "-h") {
      console.log(
        "usage: render-figures --csv-dir DIR --out-dir DIR [--figure NAME]\n" +
          `figures: ${FIGURE_NAMES.join(", ")}`,
      );
      process.exit(0);
    } else throw new Error(`unknown argument: ${arg}`);
  }
  if (csvDir === null || outDir === null) {
    throw new Error("both --csv-dir and --out-dir are required");
  }
  if (figure !== null && !(figure in FIGURES)) {
    throw new Error(`unknown figure "${figure}" (known: ${FIGURE_NAMES.join(", ")})`);
  }
  return { csvDir, outDir, figure };
}

export interface RunReport {
  written: string[];
  skipped: string[];
}

/** Render the requested figures; returns what was written and skipped. */
export function run(args: CliArgs): RunReport {
  const names = args.figure === null ? FIGURE_NAMES : [args.figure];
  mkdirSync(args.outDir, { recursive: true });
  const written: string[] = [];
  const skipped: string[] = [];
  for (const name of names) {
    const inputs = FIGURES[name].inputs
      .filter((input) => existsSync(join(args.csvDir, input.file)))
      .map((input) => ({
        label: input.label,
        text: readFileSync(join(args.csvDir, input.file), "utf-8"),
      }));
    if (inputs.length === 0) {
      if (args.figure !== null) {
        throw new Error(
          `figure ${name}: none of its input CSVs exist in ${args.csvDir} ` +
            `(expected one of: ${FIGURES[name].inputs.map((i) => i.file).join(", ")})`,
        );
      }
      skipped.push(name);
      continue;
    }
    const rendered = renderFigure(name, inputs);
    const outPath = join(args.outDir, `${name}.svg`);
    writeFileSync(outPath, rendered.svg, "utf-8");
    written.push(name);
    console.log(
      `wrote ${outPath} (${rendered.panels} panel(s), ${rendered.rowsPlotted} rows)`,
    );
  }
  for (const name of skipped) {
    console.log(`skipped ${name}: no input CSVs present`);
  }
  if (written.length === 0) {
    throw new Error(`no figures rendered: no usable CSVs found in ${args.csvDir}`);
  }
  return { written, skipped };
}

export function main(argv: string[]): number {
  try {
    run(parseArgs(argv));
    return 0;
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : err}`);
    return 1;
  }
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
