import { readFileSync } from "fs";
import { join } from "path";
import { describe, expect, it } from "vitest";

import { parseAggregateCsv } from "../src/csv";
import { FIGURES, buildPanel, metricBounds, renderFigure } from "../src/figures";

const FIXTURES = join(__dirname, "fixtures");

function fixture(name: string): string {
  return readFileSync(join(FIXTURES, name), "utf-8");
}

function curveMatches(svg: string): Array<{ method: string; points: number }> {
  const out: Array<{ method: string; points: number }> = [];
  const re = /<polyline class="curve" data-method="([^"]+)" data-points="(\d+)"/g;
  let m: RegExpExecArray | null;
  while ((m = re.exec(svg)) !== null) {
    out.push({ method: m[1], points: Number(m[2]) });
  }
  return out;
}

function circleCount(svg: string, method: string): number {
  return (svg.match(new RegExp(`<circle class="pt" data-method="${method}"`, "g")) ?? []).length;
}

function panelYRanges(svg: string): Array<{ yField: string; min: number; max: number }> {
  const out: Array<{ yField: string; min: number; max: number }> = [];
  const re = /data-y-field="([^"]+)" data-y-min="([^"]+)" data-y-max="([^"]+)"/g;
  let m: RegExpExecArray | null;
  while ((m = re.exec(svg)) !== null) {
    out.push({ yField: m[1], min: Number(m[2]), max: Number(m[3]) });
  }
  return out;
}

describe("buildPanel", () => {
  it("places every row on exactly one curve", () => {
    const rows = parseAggregateCsv(fixture("sweep_nlow_mixed.csv"));
    const panel = buildPanel(rows, "mixed", "n", "phi");
    const total = panel.series.reduce((acc, s) => acc + s.points.length, 0);
    expect(total).toBe(rows.length);
    expect(panel.series).toHaveLength(3);
    for (const series of panel.series) {
      expect(series.points).toHaveLength(5);
      const xs = series.points.map((p) => p.x);
      expect(xs).toEqual([...xs].sort((a, b) => a - b));
    }
  });

  it("averages the per-axis empirical variance for variance figures", () => {
    const rows = parseAggregateCsv(fixture("sweep_n_mixed.csv"));
    const panel = buildPanel(rows, "mixed", "n", "empvar");
    const ls = panel.series.find((s) => s.method === "LS")!;
    const row = rows.find((r) => r.method === "LS" && r.n === 25)!;
    const expected = (row.empvar![0] + row.empvar![1] + row.empvar![2]) / 3;
    const point = ls.points.find((p) => p.x === 25)!;
    expect(point.y).toBeCloseTo(expected, 15);
  });

  it("rejects variance plots when the empirical-variance fields are empty", () => {
    const text = fixture("sweep_n_mixed.csv");
    const lines = text.split("\n");
    const cells = lines[1].split(",");
    for (let i = 13; i <= 15; i++) cells[i] = "";
    lines[1] = cells.join(",");
    const rows = parseAggregateCsv(lines.join("\n"));
    expect(() => buildPanel(rows, "mixed", "n", "empvar")).toThrow(/empirical-variance/);
  });
});

describe("renderFigure", () => {
  it("draws one styled polyline per method and one marker per row", () => {
    const fig = renderFigure("fid_nlow", [{ label: "mixed", text: fixture("sweep_nlow_mixed.csv") }]);
    const curves = curveMatches(fig.svg);
    expect(curves.map((c) => c.method).sort()).toEqual(
      ["BayesConditioned", "BayesUnconditioned", "LS"],
    );
    for (const curve of curves) {
      expect(curve.points).toBe(5);
      expect(circleCount(fig.svg, curve.method)).toBe(5);
    }
    // Style contract: LS solid, unconditioned dashed, conditioned dotted.
    expect(fig.svg).toMatch(/data-method="LS" data-points="5" fill="none" stroke="[^"]+" stroke-width="[^"]+" points=/);
    expect(fig.svg).toMatch(/data-method="BayesUnconditioned"[^>]*stroke-dasharray="9,5"/);
    expect(fig.svg).toMatch(/data-method="BayesConditioned"[^>]*stroke-dasharray="2,4"/);
  });

  it("renders two side-by-side panels when both state files are supplied", () => {
    const fig = renderFigure("fid_n", [
      { label: "pure", text: fixture("sweep_n_mixed.csv") },
      { label: "mixed", text: fixture("sweep_n_mixed.csv") },
    ]);
    expect(fig.panels).toBe(2);
    expect(fig.svg).toContain('data-panels="2"');
    expect(fig.svg).toContain('data-panel="pure"');
    expect(fig.svg).toContain('data-panel="mixed"');
    expect(curveMatches(fig.svg)).toHaveLength(6);
  });

  it("keeps fidelity axes inside [0, 1] and distance axes nonnegative", () => {
    for (const [name, yField] of [
      ["fid_nlow", "phi"],
      ["hs_nlow", "chi"],
      ["var_nlow", "empvar"],
    ] as const) {
      const fig = renderFigure(name, [{ label: "mixed", text: fixture("sweep_nlow_mixed.csv") }]);
      for (const range of panelYRanges(fig.svg)) {
        expect(range.yField).toBe(yField);
        expect(range.min).toBeGreaterThanOrEqual(0);
        if (yField === "phi") expect(range.max).toBeLessThanOrEqual(1);
        const [lo, hi] = metricBounds(yField);
        if (lo !== null) expect(range.min).toBeGreaterThanOrEqual(lo);
        if (hi !== null) expect(range.max).toBeLessThanOrEqual(hi);
      }
    }
  });

  it("is deterministic", () => {
    const inputs = [{ label: "mixed", text: fixture("sweep_nlow_mixed.csv") }];
    expect(renderFigure("fid_nlow", inputs).svg).toBe(renderFigure("fid_nlow", inputs).svg);
  });

  it("rejects unknown figures and empty inputs", () => {
    expect(() => renderFigure("nope", [{ label: "x", text: "" }])).toThrow(/unknown figure/);
    expect(() => renderFigure("fid_n", [])).toThrow(/no input/);
  });

  it("covers the full catalog", () => {
    expect(Object.keys(FIGURES).sort()).toEqual(
      [
        "fid_len", "fid_lenzoom", "fid_n", "fid_nlow",
        "hs_len", "hs_n", "hs_nlow",
        "var_len", "var_n", "var_nlow",
      ].sort(),
    );
  });
});
