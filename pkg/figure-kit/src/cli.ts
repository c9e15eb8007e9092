#!/usr/bin/env node
/**
 * figure-kit <template> --in a.csv [b.csv ...] --out figure.svg
 */
import { readFileSync, writeFileSync } from "node:fs";

import { parseCsv } from "./csv.js";
import { TEMPLATES, render } from "./templates.js";

function usage(): string {
  const rows = Object.entries(TEMPLATES)
    .map(([name, t]) => `  ${name.padEnd(8)} ${t.inputs}`)
    .join("\n");
  return `usage: figure-kit <template> --in <csv...> --out <svg>\n\ntemplates:\n${rows}\n`;
}

export function main(argv: string[]): number {
  const args = [...argv];
  const template = args.shift();
  if (!template || template === "--help" || template === "-h") {
    process.stderr.write(usage());
    return template ? 0 : 2;
  }
  const inputs: string[] = [];
  let out = "";
  while (args.length > 0) {
    const flag = args.shift();
    if (flag === "--in") {
      while (args.length > 0 && !args[0].startsWith("--")) {
        inputs.push(args.shift() as string);
      }
    } else if (flag === "--out") {
      out = args.shift() ?? "";
    } else {
      process.stderr.write(`unknown argument '${flag}'\n${usage()}`);
      return 2;
    }
  }
  if (inputs.length === 0 || out === "") {
    process.stderr.write(usage());
    return 2;
  }
  try {
    const csvs = inputs.map((p) => parseCsv(readFileSync(p, "utf8")));
    writeFileSync(out, render(template, csvs));
  } catch (err) {
    process.stderr.write(`error: ${err instanceof Error ? err.message : err}\n`);
    return 1;
  }
  process.stdout.write(`${out}\n`);
  return 0;
}

if (import.meta.url === `file://${process.argv[1]}`) {
  process.exit(main(process.argv.slice(2)));
}
