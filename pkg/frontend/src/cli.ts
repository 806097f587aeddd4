#!/usr/bin/env node
/** plots <campaign-csv> --campaign <name> --out <figure.svg> [--methods a,b] */

import { realpathSync } from "node:fs";
import { fileURLToPath } from "node:url";
import { parseArgs } from "node:util";

import { Campaign, CAMPAIGNS } from "./aggregate.js";
import { renderCampaign, sidecarPath } from "./figure.js";
import { SchemaError } from "./schema.js";

export function runCli(argv: string[]): number {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      allowPositionals: true,
      options: {
        campaign: { type: "string" },
        out: { type: "string" },
        methods: { type: "string" },
      },
    });
  } catch (err) {
    console.error(`plots: ${(err as Error).message}`);
    return 1;
  }
  const { values, positionals } = parsed;
  if (positionals.length !== 1 || !values.campaign || !values.out) {
    console.error(
      "usage: plots <campaign-csv> --campaign <name> --out <figure.svg> [--methods a,b]",
    );
    return 1;
  }
  if (!(CAMPAIGNS as readonly string[]).includes(values.campaign)) {
    console.error(
      `plots: unknown campaign ${values.campaign} (choose from ${CAMPAIGNS.join(", ")})`,
    );
    return 1;
  }
  try {
    renderCampaign({
      input: positionals[0],
      campaign: values.campaign as Campaign,
      out: values.out,
      methods: values.methods ? values.methods.split(",").filter(Boolean) : [],
    });
  } catch (err) {
    if (err instanceof SchemaError || (err as NodeJS.ErrnoException).code) {
      console.error(`plots: ${(err as Error).message}`);
      return 1;
    }
    throw err;
  }
  console.log(`wrote ${values.out} and ${sidecarPath(values.out)}`);
  return 0;
}

function invokedDirectly(): boolean {
  if (!process.argv[1]) return false;
  try {
    return realpathSync(process.argv[1]) === realpathSync(fileURLToPath(import.meta.url));
  } catch {
    return false;
  }
}

if (invokedDirectly()) {
  process.exit(runCli(process.argv.slice(2)));
}
