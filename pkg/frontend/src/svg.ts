/**
 * Minimal SVG line-chart builder.
 *
 * Every plotted point becomes a <circle data-method=...> and every curve a
 * <polyline data-method=... data-points=N>, so tests (and downstream
 * tooling) can verify exactly what was drawn without rasterizing anything.
 */

export interface Series {
  method: string;
  points: Array<{ x: number; y: number }>;
}

export interface PanelSpec {
  label: string;
  xField: string;
  yField: string;
  series: Series[];
  /** Hard bounds the y-axis must stay inside, e.g. [0, 1] for fidelity. */
  yBounds: [number | null, number | null];
}

const PANEL_WIDTH = 420;
const PANEL_HEIGHT = 320;
const MARGIN = { top: 34, right: 16, bottom: 44, left: 62 };

const METHOD_STYLE: Record<string, { dash: string; color: string }> = {
  LS: { dash: "", color: "#1f4e8c" },
  BayesUnconditioned: { dash: "9,5", color: "#b5541c" },
  BayesConditioned: { dash: "2,4", color: "#2a7a2a" },
};

function styleFor(method: string): { dash: string; color: string } {
  return METHOD_STYLE[method] ?? { dash: "5,3", color: "#555555" };
}

function niceTicks(lo: number, hi: number, count = 5): number[] {
  if (hi === lo) return [lo];
  const step = (hi - lo) / (count - 1);
  return Array.from({ length: count }, (_, i) => lo + i * step);
}

function formatTick(value: number): string {
  const abs = Math.abs(value);
  if (abs !== 0 && (abs < 1e-3 || abs >= 1e4)) return value.toExponential(1);
  return Number(value.toPrecision(4)).toString();
}

class Scale {
  constructor(
    private readonly lo: number,
    private readonly hi: number,
    private readonly rangeLo: number,
    private readonly rangeHi: number,
  ) {}

  map(v: number): number {
    if (this.hi === this.lo) return 0.5 * (this.rangeLo + this.rangeHi);
    const t = (v - this.lo) / (this.hi - this.lo);
    return this.rangeLo + t * (this.rangeHi - this.rangeLo);
  }
}

function dataExtent(values: number[]): [number, number] {
  return [Math.min(...values), Math.max(...values)];
}

/** y-domain padded around the data but clamped to the metric bounds. */
export function yDomain(values: number[], bounds: [number | null, number | null]): [number, number] {
  let [lo, hi] = dataExtent(values);
  const pad = (hi - lo) * 0.08 || Math.abs(hi) * 0.05 || 0.01;
  lo -= pad;
  hi += pad;
  if (bounds[0] !== null) lo = Math.max(lo, bounds[0]);
  if (bounds[1] !== null) hi = Math.min(hi, bounds[1]);
  if (lo > hi) [lo, hi] = [hi, lo];
  return [lo, hi];
}

function renderPanel(panel: PanelSpec, offsetX: number): string {
  const xs = panel.series.flatMap((s) => s.points.map((p) => p.x));
  const ys = panel.series.flatMap((s) => s.points.map((p) => p.y));
  const [xLo, xHi] = dataExtent(xs);
  const [yLo, yHi] = yDomain(ys, panel.yBounds);
  const plotX0 = MARGIN.left;
  const plotX1 = PANEL_WIDTH - MARGIN.right;
  const plotY0 = PANEL_HEIGHT - MARGIN.bottom;
  const plotY1 = MARGIN.top;
  const sx = new Scale(xLo, xHi, plotX0, plotX1);
  const sy = new Scale(yLo, yHi, plotY0, plotY1);

  const parts: string[] = [];
  parts.push(
    `<g class="panel" transform="translate(${offsetX},0)" data-panel="${panel.label}" ` +
      `data-x-field="${panel.xField}" data-y-field="${panel.yField}" ` +
      `data-y-min="${yLo}" data-y-max="${yHi}">`,
  );
  parts.push(
    `<rect x="${plotX0}" y="${plotY1}" width="${plotX1 - plotX0}" height="${plotY0 - plotY1}" ` +
      `fill="none" stroke="#999" stroke-width="1"/>`,
  );
  for (const tick of niceTicks(xLo, xHi)) {
    const px = sx.map(tick);
    parts.push(`<line x1="${px}" y1="${plotY0}" x2="${px}" y2="${plotY0 + 5}" stroke="#555"/>`);
    parts.push(
      `<text x="${px}" y="${plotY0 + 18}" font-size="10" text-anchor="middle">${formatTick(tick)}</text>`,
    );
  }
  for (const tick of niceTicks(yLo, yHi)) {
    const py = sy.map(tick);
    parts.push(`<line x1="${plotX0 - 5}" y1="${py}" x2="${plotX0}" y2="${py}" stroke="#555"/>`);
    parts.push(
      `<text x="${plotX0 - 8}" y="${py + 3}" font-size="10" text-anchor="end">${formatTick(tick)}</text>`,
    );
  }
  parts.push(
    `<text x="${(plotX0 + plotX1) / 2}" y="${PANEL_HEIGHT - 10}" font-size="12" ` +
      `text-anchor="middle">${panel.xField}</text>`,
  );
  parts.push(
    `<text x="16" y="${(plotY0 + plotY1) / 2}" font-size="12" text-anchor="middle" ` +
      `transform="rotate(-90 16 ${(plotY0 + plotY1) / 2})">${panel.yField}</text>`,
  );
  parts.push(
    `<text x="${(plotX0 + plotX1) / 2}" y="${MARGIN.top - 14}" font-size="12" ` +
      `text-anchor="middle" font-weight="bold">${panel.label}</text>`,
  );

  panel.series.forEach((series, index) => {
    const { dash, color } = styleFor(series.method);
    const pts = series.points
      .map((p) => `${sx.map(p.x).toFixed(2)},${sy.map(p.y).toFixed(2)}`)
      .join(" ");
    const dashAttr = dash === "" ? "" : ` stroke-dasharray="${dash}"`;
    parts.push(
      `<polyline class="curve" data-method="${series.method}" data-points="${series.points.length}" ` +
        `fill="none" stroke="${color}" stroke-width="1.6"${dashAttr} points="${pts}"/>`,
    );
    for (const p of series.points) {
      parts.push(
        `<circle class="pt" data-method="${series.method}" cx="${sx.map(p.x).toFixed(2)}" ` +
          `cy="${sy.map(p.y).toFixed(2)}" r="2.4" fill="${color}"/>`,
      );
    }
    const ly = plotY1 + 14 + index * 14;
    parts.push(
      `<line x1="${plotX1 - 120}" y1="${ly - 3}" x2="${plotX1 - 92}" y2="${ly - 3}" ` +
        `stroke="${color}" stroke-width="1.6"${dashAttr}/>`,
    );
    parts.push(`<text x="${plotX1 - 86}" y="${ly}" font-size="10">${series.method}</text>`);
  });
  parts.push("</g>");
  return parts.join("\n");
}

/** Assemble one or more side-by-side panels into a complete SVG document. */
export function renderSvg(figureName: string, panels: PanelSpec[]): string {
  const width = PANEL_WIDTH * panels.length;
  const body = panels.map((p, i) => renderPanel(p, i * PANEL_WIDTH)).join("\n");
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${PANEL_HEIGHT}" ` +
    `viewBox="0 0 ${width} ${PANEL_HEIGHT}" data-figure="${figureName}" ` +
    `data-panels="${panels.length}">\n${body}\n</svg>\n`
  );
}
