import { readFileSync } from "fs";
import { join } from "path";
import { describe, expect, it } from "vitest";

import { parseAggregateCsv } from "../src/csv";

const FIXTURES = join(__dirname, "fixtures");

describe("parseAggregateCsv", () => {
  it("parses the low-n mixed sweep fixture", () => {
    const rows = parseAggregateCsv(readFileSync(join(FIXTURES, "sweep_nlow_mixed.csv"), "utf-8"));
    expect(rows).toHaveLength(15); // 5 n-values x 3 methods
    expect(new Set(rows.map((r) => r.method))).toEqual(
      new Set(["LS", "BayesUnconditioned", "BayesConditioned"]),
    );
    expect(new Set(rows.map((r) => r.n))).toEqual(new Set([5, 10, 15, 20, 25]));
    for (const row of rows) {
      expect(row.kind).toBe("sweep_n");
      expect(row.reps).toBe(200);
      expect(row.phi).toBeGreaterThan(0);
      expect(row.phi).toBeLessThanOrEqual(1);
      expect(row.chi).toBeGreaterThanOrEqual(0);
      expect(row.empvar).not.toBeNull();
    }
  });

  it("maps empty posterior-variance fields to null for LS rows", () => {
    const rows = parseAggregateCsv(readFileSync(join(FIXTURES, "sweep_n_mixed.csv"), "utf-8"));
    for (const row of rows) {
      if (row.method === "LS") expect(row.postvar).toBeNull();
      else expect(row.postvar).not.toBeNull();
    }
  });

  it("round-trips exact float values", () => {
    const text = readFileSync(join(FIXTURES, "sweep_n_mixed.csv"), "utf-8");
    const rows = parseAggregateCsv(text);
    const firstDataLine = text.split("\n")[1].split(",");
    expect(rows[0].phi).toBe(Number(firstDataLine[8]));
    expect(rows[0].sTrue).toEqual([0.3, -0.4, 0.3]);
  });

  it("rejects a missing column", () => {
    expect(() => parseAggregateCsv("kind,method,n\nsweep_n,LS,5")).toThrow(/missing column/);
  });

  it("rejects empty input and header-only input", () => {
    expect(() => parseAggregateCsv("")).toThrow(/empty/);
    const header = readFileSync(join(FIXTURES, "sweep_n_mixed.csv"), "utf-8").split("\n")[0];
    expect(() => parseAggregateCsv(header + "\n")).toThrow(/no data rows/);
  });

  it("rejects malformed numbers", () => {
    const text = readFileSync(join(FIXTURES, "sweep_n_mixed.csv"), "utf-8");
    const lines = text.split("\n");
    lines[1] = lines[1].replace(/^sweep_n,LS,25/, "sweep_n,LS,abc");
    expect(() => parseAggregateCsv(lines.join("\n"))).toThrow(/not a finite number/);
  });
});
