/**
 * Reader for the aggregate sweep CSV contract.
 *
 * Schema (one header line, stable column order):
 *   kind,method,n,s_true_1,s_true_2,s_true_3,length,reps,phi,chi,
 *   postvar_1..3,empvar_1..3
 * Missing values (e.g. posterior variance for LS rows) are empty fields.
 */

export interface AggregateRow {
  kind: string;
  method: string;
  n: number;
  sTrue: [number, number, number];
  length: number;
  reps: number;
  phi: number;
  chi: number;
  postvar: [number, number, number] | null;
  empvar: [number, number, number] | null;
}

export const REQUIRED_COLUMNS = [
  "kind", "method", "n",
  "s_true_1", "s_true_2", "s_true_3",
  "length", "reps", "phi", "chi",
  "postvar_1", "postvar_2", "postvar_3",
  "empvar_1", "empvar_2", "empvar_3",
] as const;

function parseNumber(token: string, column: string, line: number): number {
  const value = Number(token);
  if (token.trim() === "" || !Number.isFinite(value)) {
    throw new Error(`line ${line}: column ${column} is not a finite number: "${token}"`);
  }
  return value;
}

function parseTriple(
  record: Record<string, string>,
  prefix: string,
  line: number,
): [number, number, number] | null {
  const tokens = [1, 2, 3].map((i) => record[`${prefix}_${i}`]);
  if (tokens.every((t) => t === "")) return null;
  return tokens.map((t, i) => parseNumber(t, `${prefix}_${i + 1}`, line)) as [
    number, number, number,
  ];
}

/** Parse aggregate CSV text; rejects missing columns and malformed rows. */
export function parseAggregateCsv(text: string): AggregateRow[] {
  const lines = text.split("\n").map((l) => l.replace(/\r$/, "")).filter((l) => l !== "");
  if (lines.length === 0) {
    throw new Error("empty CSV input");
  }
  const header = lines[0].split(",");
  for (const column of REQUIRED_COLUMNS) {
    if (!header.includes(column)) {
      throw new Error(`missing column "${column}" in CSV header`);
    }
  }
  const rows: AggregateRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(",");
    if (cells.length !== header.length) {
      throw new Error(`line ${i + 1}: expected ${header.length} cells, got ${cells.length}`);
    }
    const record: Record<string, string> = {};
    header.forEach((name, j) => (record[name] = cells[j]));
    rows.push({
      kind: record.kind,
      method: record.method,
      n: parseNumber(record.n, "n", i + 1),
      sTrue: [
        parseNumber(record.s_true_1, "s_true_1", i + 1),
        parseNumber(record.s_true_2, "s_true_2", i + 1),
        parseNumber(record.s_true_3, "s_true_3", i + 1),
      ],
      length: parseNumber(record.length, "length", i + 1),
      reps: parseNumber(record.reps, "reps", i + 1),
      phi: parseNumber(record.phi, "phi", i + 1),
      chi: parseNumber(record.chi, "chi", i + 1),
      postvar: parseTriple(record, "postvar", i + 1),
      empvar: parseTriple(record, "empvar", i + 1),
    });
  }
  if (rows.length === 0) {
    throw new Error("CSV contains a header but no data rows");
  }
  return rows;
}
