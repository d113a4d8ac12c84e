/**
 * Figure catalog: which CSV files feed each figure, which fields are
 * plotted, and the validation that every data row lands on exactly one
 * curve.
 */

import { AggregateRow, parseAggregateCsv } from "./csv";
import { PanelSpec, Series, renderSvg } from "./svg";

export type YField = "phi" | "chi" | "empvar";
export type XField = "n" | "length";

export interface FigureDef {
  /** Input files expected in the CSV directory, each becoming one panel. */
  inputs: Array<{ file: string; label: string }>;
  xField: XField;
  yField: YField;
}

export const FIGURES: Record<string, FigureDef> = {
  fid_n: {
    inputs: [
      { file: "sweep_n_pure.csv", label: "pure" },
      { file: "sweep_n_mixed.csv", label: "mixed" },
    ],
    xField: "n",
    yField: "phi",
  },
  fid_nlow: {
    inputs: [
      { file: "sweep_nlow_pure.csv", label: "pure" },
      { file: "sweep_nlow_mixed.csv", label: "mixed" },
    ],
    xField: "n",
    yField: "phi",
  },
  hs_n: {
    inputs: [
      { file: "sweep_n_pure.csv", label: "pure" },
      { file: "sweep_n_mixed.csv", label: "mixed" },
    ],
    xField: "n",
    yField: "chi",
  },
  hs_nlow: {
    inputs: [
      { file: "sweep_nlow_pure.csv", label: "pure" },
      { file: "sweep_nlow_mixed.csv", label: "mixed" },
    ],
    xField: "n",
    yField: "chi",
  },
  var_n: {
    inputs: [
      { file: "sweep_n_pure.csv", label: "pure" },
      { file: "sweep_n_mixed.csv", label: "mixed" },
    ],
    xField: "n",
    yField: "empvar",
  },
  var_nlow: {
    inputs: [
      { file: "sweep_nlow_pure.csv", label: "pure" },
      { file: "sweep_nlow_mixed.csv", label: "mixed" },
    ],
    xField: "n",
    yField: "empvar",
  },
  fid_len: {
    inputs: [
      { file: "sweep_length_n100.csv", label: "n=100" },
      { file: "sweep_length_n900.csv", label: "n=900" },
    ],
    xField: "length",
    yField: "phi",
  },
  fid_lenzoom: {
    inputs: [{ file: "sweep_length_zoom_n900.csv", label: "n=900 zoom" }],
    xField: "length",
    yField: "phi",
  },
  hs_len: {
    inputs: [
      { file: "sweep_length_n100.csv", label: "n=100" },
      { file: "sweep_length_n900.csv", label: "n=900" },
    ],
    xField: "length",
    yField: "chi",
  },
  var_len: {
    inputs: [
      { file: "sweep_length_n100.csv", label: "n=100" },
      { file: "sweep_length_n900.csv", label: "n=900" },
    ],
    xField: "length",
    yField: "empvar",
  },
};

export const FIGURE_NAMES = Object.keys(FIGURES);

/** Bounds the y-axis must respect: fidelity in [0, 1], distances/variances >= 0. */
export function metricBounds(yField: YField): [number | null, number | null] {
  return yField === "phi" ? [0, 1] : [0, null];
}

function yValue(row: AggregateRow, yField: YField): number {
  if (yField === "phi") return row.phi;
  if (yField === "chi") return row.chi;
  if (row.empvar === null) {
    throw new Error(
      `row (method=${row.method}, n=${row.n}) has empty empirical-variance fields; ` +
        "variance figures need sweeps with at least 2 repetitions",
    );
  }
  return (row.empvar[0] + row.empvar[1] + row.empvar[2]) / 3;
}

/**
 * Turn one CSV's rows into the per-method series of a panel.
 *
 * Validates that every row contributes exactly one point and that fidelity
 * values sit inside [0, 1] (distances and variances must be nonnegative).
 */
export function buildPanel(
  rows: AggregateRow[],
  label: string,
  xField: XField,
  yField: YField,
): PanelSpec {
  const byMethod = new Map<string, Series>();
  let placed = 0;
  for (const row of rows) {
    const x = xField === "n" ? row.n : row.length;
    const y = yValue(row, yField);
    if (yField === "phi" && (y < 0 || y > 1)) {
      throw new Error(`fidelity value out of range: ${y}`);
    }
    if (yField !== "phi" && y < 0) {
      throw new Error(`${yField} value negative: ${y}`);
    }
    let series = byMethod.get(row.method);
    if (series === undefined) {
      series = { method: row.method, points: [] };
      byMethod.set(row.method, series);
    }
    series.points.push({ x, y });
    placed += 1;
  }
  if (placed !== rows.length) {
    throw new Error(`row accounting mismatch: placed ${placed} of ${rows.length}`);
  }
  const series = [...byMethod.values()];
  for (const s of series) {
    s.points.sort((a, b) => a.x - b.x);
  }
  return { label, xField, yField, series, yBounds: metricBounds(yField) };
}

export interface RenderedFigure {
  name: string;
  svg: string;
  panels: number;
  rowsPlotted: number;
}

/** Render one figure from the CSV texts of its available inputs. */
export function renderFigure(
  name: string,
  inputs: Array<{ label: string; text: string }>,
): RenderedFigure {
  const def = FIGURES[name];
  if (def === undefined) {
    throw new Error(`unknown figure "${name}" (known: ${FIGURE_NAMES.join(", ")})`);
  }
  if (inputs.length === 0) {
    throw new Error(`figure ${name}: no input CSVs available`);
  }
  const panels: PanelSpec[] = [];
  let rowsPlotted = 0;
  for (const input of inputs) {
    const rows = parseAggregateCsv(input.text);
    panels.push(buildPanel(rows, input.label, def.xField, def.yField));
    rowsPlotted += rows.length;
  }
  return { name, svg: renderSvg(name, panels), panels: panels.length, rowsPlotted };
}
