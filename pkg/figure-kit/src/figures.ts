/**
 * Driver: render every template from the shipped fixture CSVs into out/.
 */
import { mkdirSync, readFileSync, writeFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { parseCsv } from "./csv.js";
import { render } from "./templates.js";

const ROOT = join(dirname(fileURLToPath(import.meta.url)), "..");

export const FIXTURE_JOBS: Record<string, string[]> = {
  fig2: ["fig2.csv"],
  fig3: ["fig3_hadamard.csv", "fig3_pi8.csv"],
  fig4: ["fig4_hadamard.csv", "fig4_pi8.csv"],
  fig6a: ["fig6a_hadamard.csv", "fig6a_pi8.csv"],
  fig6cd: ["fig6c.csv", "fig6d.csv"],
  fig7: ["fig7.csv"],
  fig8: ["fig8_hadamard.csv", "fig8_pi8.csv"],
};

export function renderAll(outDir = join(ROOT, "out")): string[] {
  mkdirSync(outDir, { recursive: true });
  const written: string[] = [];
  for (const [template, files] of Object.entries(FIXTURE_JOBS)) {
    const csvs = files.map((f) =>
      parseCsv(readFileSync(join(ROOT, "fixtures", f), "utf8")),
    );
    const path = join(outDir, `${template}.svg`);
    writeFileSync(path, render(template, csvs));
    written.push(path);
  }
  return written;
}

if (import.meta.url === `file://${process.argv[1]}`) {
  for (const path of renderAll()) process.stdout.write(`${path}\n`);
}
