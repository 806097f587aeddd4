/** Trial-record CSV schema shared with the selection pipeline. */

import Papa from "papaparse";

export const CSV_COLUMNS = [
  "campaign",
  "method",
  "n",
  "p_neg",
  "beta",
  "seed",
  "removed_count",
  "final_lambda_min",
  "q_evals",
  "wall_ms",
  "status",
] as const;

export interface TrialRow {
  campaign: string;
  method: string;
  n: number;
  p_neg: number;
  beta: number;
  seed: number;
  removed_count: number;
  final_lambda_min: number;
  q_evals: number;
  wall_ms: number;
  status: string;
}

export class SchemaError extends Error {}

/** Parse a float serialized by Python repr, including inf and nan. */
export function parseFloatField(raw: string, column: string): number {
  const s = raw.trim();
  if (s === "inf") return Infinity;
  if (s === "-inf") return -Infinity;
  if (s === "nan") return NaN;
  const v = Number(s);
  if (s === "" || Number.isNaN(v)) {
    throw new SchemaError(`bad numeric value ${JSON.stringify(raw)} in column ${column}`);
  }
  return v;
}

function parseIntField(raw: string, column: string): number {
  const v = parseFloatField(raw, column);
  if (!Number.isInteger(v)) {
    throw new SchemaError(`expected integer in column ${column}, got ${raw}`);
  }
  return v;
}

/** Parse campaign CSV text into trial rows, validating the header. */
export function parseRecords(text: string): TrialRow[] {
  const parsed = Papa.parse<Record<string, string>>(text, {
    header: true,
    skipEmptyLines: true,
  });
  const fields = parsed.meta.fields ?? [];
  const missing = CSV_COLUMNS.filter((c) => !fields.includes(c));
  if (missing.length > 0) {
    throw new SchemaError(`missing columns: ${missing.join(", ")}`);
  }
  const extra = fields.filter((c) => !(CSV_COLUMNS as readonly string[]).includes(c));
  if (extra.length > 0) {
    throw new SchemaError(`unknown columns: ${extra.join(", ")}`);
  }
  return parsed.data.map((row) => ({
    campaign: row.campaign,
    method: row.method,
    n: parseIntField(row.n, "n"),
    p_neg: parseFloatField(row.p_neg, "p_neg"),
    beta: parseFloatField(row.beta, "beta"),
    seed: parseIntField(row.seed, "seed"),
    removed_count: parseIntField(row.removed_count, "removed_count"),
    final_lambda_min: parseFloatField(row.final_lambda_min, "final_lambda_min"),
    q_evals: parseIntField(row.q_evals, "q_evals"),
    wall_ms: parseIntField(row.wall_ms, "wall_ms"),
    status: row.status,
  }));
}
