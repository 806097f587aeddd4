/** Group trial rows into per-method mean/spread series over the sweep grid. */

import { SchemaError, TrialRow } from "./schema.js";

export const CAMPAIGNS = ["size_sweep", "negprob_sweep", "rate_sweep"] as const;
export type Campaign = (typeof CAMPAIGNS)[number];

export function sweepVariable(campaign: Campaign): "n" | "p_neg" | "beta" {
  switch (campaign) {
    case "size_sweep":
      return "n";
    case "negprob_sweep":
      return "p_neg";
    case "rate_sweep":
      return "beta";
  }
}

export interface SeriesPoint {
  value: number;
  mean: number;
  /** Sample standard deviation (n-1 denominator); 0 for a single trial. */
  std: number;
}

export type MethodSeries = Map<string, SeriesPoint[]>;

function mean(xs: number[]): number {
  return xs.reduce((a, b) => a + b, 0) / xs.length;
}

function sampleStd(xs: number[], m: number): number {
  if (xs.length < 2) return 0.0;
  const ss = xs.reduce((a, b) => a + (b - m) * (b - m), 0);
  return Math.sqrt(ss / (xs.length - 1));
}

/**
 * Per-method removed-count series along the campaign's sweep variable.
 *
 * Rows must all belong to the one named campaign; each series is sorted
 * by grid value, methods iterate in sorted name order.
 */
export function aggregate(rows: TrialRow[], campaign: Campaign): MethodSeries {
  if (rows.length === 0) {
    throw new SchemaError("no rows to aggregate");
  }
  const stray = rows.find((r) => r.campaign !== campaign);
  if (stray) {
    throw new SchemaError(
      `row campaign ${stray.campaign} does not match ${campaign}`,
    );
  }
  const variable = sweepVariable(campaign);
  const groups = new Map<string, Map<number, number[]>>();
  for (const row of rows) {
    const byValue = groups.get(row.method) ?? new Map<number, number[]>();
    groups.set(row.method, byValue);
    const value = row[variable];
    const bucket = byValue.get(value) ?? [];
    byValue.set(value, bucket);
    bucket.push(row.removed_count);
  }
  const out: MethodSeries = new Map();
  for (const method of [...groups.keys()].sort()) {
    const byValue = groups.get(method)!;
    const series = [...byValue.entries()]
      .sort((a, b) => a[0] - b[0])
      .map(([value, counts]) => {
        const m = mean(counts);
        return { value, mean: m, std: sampleStd(counts, m) };
      });
    out.set(method, series);
  }
  return out;
}

/** Serialized data series written alongside the figure. */
export function sidecarCsv(campaign: Campaign, series: MethodSeries): string {
  const variable = sweepVariable(campaign);
  const lines = [`campaign,method,${variable},mean_removed_count,std_removed_count`];
  for (const [method, points] of series) {
    for (const p of points) {
      lines.push(`${campaign},${method},${p.value},${p.mean},${p.std}`);
    }
  }
  return lines.join("\n") + "\n";
}
