export {
  aggregate,
  CAMPAIGNS,
  sidecarCsv,
  sweepVariable,
} from "./aggregate.js";
export type { Campaign, MethodSeries, SeriesPoint } from "./aggregate.js";
export { figureSvg, renderCampaign, sidecarPath } from "./figure.js";
export type { FigureSpec } from "./figure.js";
export { CSV_COLUMNS, parseFloatField, parseRecords, SchemaError } from "./schema.js";
export type { TrialRow } from "./schema.js";
export { runCli } from "./cli.js";
