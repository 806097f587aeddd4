/** SVG rendering of campaign series: mean curves with ±1 std bands. */

import { readFileSync, writeFileSync } from "node:fs";

import {
  aggregate,
  Campaign,
  CAMPAIGNS,
  MethodSeries,
  sidecarCsv,
  sweepVariable,
} from "./aggregate.js";
import { parseRecords, SchemaError } from "./schema.js";

export interface FigureSpec {
  input: string;
  campaign: Campaign;
  out: string;
  /** Methods to include; empty means every method present in the CSV. */
  methods: string[];
}

const WIDTH = 640;
const HEIGHT = 420;
const MARGIN = { top: 20, right: 20, bottom: 48, left: 56 };

const METHOD_COLORS: Record<string, string> = {
  greedy_q: "#1f77b4",
  inv_trace: "#2ca02c",
  logdet: "#9467bd",
  degree: "#ff7f0e",
  random: "#d62728",
};
const FALLBACK_COLORS = ["#8c564b", "#e377c2", "#7f7f7f", "#bcbd22"];

const X_LABELS: Record<Campaign, string> = {
  size_sweep: "network size n",
  negprob_sweep: "negative edge probability",
  rate_sweep: "rate threshold beta",
};

function color(method: string, index: number): string {
  return METHOD_COLORS[method] ?? FALLBACK_COLORS[index % FALLBACK_COLORS.length];
}

/** Round tick positions covering [lo, hi] at a power-of-ten-friendly step. */
function ticks(lo: number, hi: number, want = 5): number[] {
  if (hi === lo) return [lo];
  const raw = (hi - lo) / want;
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  const step = [1, 2, 5, 10].map((m) => m * mag).find((s) => s >= raw) ?? raw;
  const out: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + 1e-12; v += step) {
    out.push(Math.abs(v) < 1e-12 ? 0 : v);
  }
  return out;
}

function fmt(v: number): string {
  const r = Math.round(v);
  return Math.abs(v - r) < 1e-9 ? String(r) : String(Number(v.toPrecision(6)));
}

class Scale {
  constructor(
    private lo: number,
    private hi: number,
    private outLo: number,
    private outHi: number,
  ) {}

  at(v: number): number {
    if (this.hi === this.lo) return (this.outLo + this.outHi) / 2;
    const t = (v - this.lo) / (this.hi - this.lo);
    return this.outLo + t * (this.outHi - this.outLo);
  }
}

function px(v: number): string {
  return v.toFixed(2);
}

/** Build the chart SVG for already-aggregated series. */
export function figureSvg(campaign: Campaign, series: MethodSeries): string {
  const methods = [...series.keys()];
  const points = methods.flatMap((m) => series.get(m)!);
  const xs = points.map((p) => p.value);
  const highs = points.map((p) => p.mean + p.std);
  const xLo = Math.min(...xs);
  const xHi = Math.max(...xs);
  const yHi = Math.max(...highs, 1) * 1.05;
  const x = new Scale(xLo, xHi, MARGIN.left, WIDTH - MARGIN.right);
  const y = new Scale(0, yHi, HEIGHT - MARGIN.bottom, MARGIN.top);

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${WIDTH} ${HEIGHT}" ` +
      `font-family="sans-serif" font-size="12">`,
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);

  const axisY = HEIGHT - MARGIN.bottom;
  for (const t of ticks(xLo, xHi)) {
    const tx = x.at(t);
    parts.push(
      `<line x1="${px(tx)}" y1="${axisY}" x2="${px(tx)}" y2="${axisY + 5}" stroke="black"/>`,
      `<text x="${px(tx)}" y="${axisY + 18}" text-anchor="middle">${fmt(t)}</text>`,
    );
  }
  for (const t of ticks(0, yHi)) {
    const ty = y.at(t);
    parts.push(
      `<line x1="${MARGIN.left - 5}" y1="${px(ty)}" x2="${MARGIN.left}" y2="${px(ty)}" stroke="black"/>`,
      `<text x="${MARGIN.left - 9}" y="${px(ty + 4)}" text-anchor="end">${fmt(t)}</text>`,
      `<line x1="${MARGIN.left}" y1="${px(ty)}" x2="${WIDTH - MARGIN.right}" y2="${px(ty)}" stroke="#dddddd"/>`,
    );
  }
  parts.push(
    `<line x1="${MARGIN.left}" y1="${axisY}" x2="${WIDTH - MARGIN.right}" y2="${axisY}" stroke="black"/>`,
    `<line x1="${MARGIN.left}" y1="${MARGIN.top}" x2="${MARGIN.left}" y2="${axisY}" stroke="black"/>`,
    `<text x="${px((MARGIN.left + WIDTH - MARGIN.right) / 2)}" y="${HEIGHT - 10}" ` +
      `text-anchor="middle">${X_LABELS[campaign]}</text>`,
    `<text x="16" y="${px((MARGIN.top + axisY) / 2)}" text-anchor="middle" ` +
      `transform="rotate(-90 16 ${px((MARGIN.top + axisY) / 2)})">rows removed (mean ± 1 std)</text>`,
  );

  methods.forEach((method, i) => {
    const pts = series.get(method)!;
    const c = color(method, i);
    if (pts.length > 1) {
      const upper = pts.map((p) => `${px(x.at(p.value))},${px(y.at(p.mean + p.std))}`);
      const lower = [...pts]
        .reverse()
        .map((p) => `${px(x.at(p.value))},${px(y.at(Math.max(p.mean - p.std, 0)))}`);
      parts.push(
        `<polygon class="band" data-method="${method}" ` +
          `points="${[...upper, ...lower].join(" ")}" fill="${c}" fill-opacity="0.15"/>`,
        `<polyline class="mean" data-method="${method}" points="` +
          pts.map((p) => `${px(x.at(p.value))},${px(y.at(p.mean))}`).join(" ") +
          `" fill="none" stroke="${c}" stroke-width="2"/>`,
      );
    }
    for (const p of pts) {
      parts.push(
        `<circle class="marker" data-method="${method}" cx="${px(x.at(p.value))}" ` +
          `cy="${px(y.at(p.mean))}" r="3.5" fill="${c}"/>`,
      );
    }
  });

  methods.forEach((method, i) => {
    const ly = MARGIN.top + 8 + 18 * i;
    const lx = MARGIN.left + 12;
    parts.push(
      `<line x1="${lx}" y1="${ly}" x2="${lx + 22}" y2="${ly}" ` +
        `stroke="${color(method, i)}" stroke-width="2"/>`,
      `<text x="${lx + 28}" y="${ly + 4}">${method}</text>`,
    );
  });

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}

export function sidecarPath(out: string): string {
  return out.replace(/\.[^./\\]+$/, "") + ".series.csv";
}

/**
 * Read a campaign CSV, write the figure and its data-series sidecar.
 *
 * Nothing is written when validation fails (empty CSV, schema mismatch,
 * campaign mismatch, unknown method filter).
 */
export function renderCampaign(spec: FigureSpec): { svg: string; sidecar: string } {
  if (!(CAMPAIGNS as readonly string[]).includes(spec.campaign)) {
    throw new SchemaError(`unknown campaign ${spec.campaign}`);
  }
  const rows = parseRecords(readFileSync(spec.input, "utf8"));
  if (rows.length === 0) {
    throw new SchemaError("empty CSV: nothing to plot");
  }
  const present = new Set(rows.map((r) => r.method));
  const methods = spec.methods.length > 0 ? spec.methods : [...present].sort();
  if (methods.length === 0) {
    throw new SchemaError("need at least one method");
  }
  const absent = methods.filter((m) => !present.has(m));
  if (absent.length > 0) {
    throw new SchemaError(`methods not in CSV: ${absent.join(", ")}`);
  }
  const kept = rows.filter((r) => methods.includes(r.method));
  const series = aggregate(kept, spec.campaign);
  const svg = figureSvg(spec.campaign, series);
  const sidecar = sidecarCsv(spec.campaign, series);
  writeFileSync(spec.out, svg);
  writeFileSync(sidecarPath(spec.out), sidecar);
  return { svg, sidecar };
}
