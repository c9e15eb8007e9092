import { mkdtempSync, readFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { describe, expect, it } from "vitest";

import { SchemaError, parseCsv } from "../src/csv.js";
import { FIXTURE_JOBS, renderAll } from "../src/figures.js";
import { TEMPLATES, render } from "../src/templates.js";

const FIXTURES = join(__dirname, "..", "fixtures");

function load(name: string) {
  return parseCsv(readFileSync(join(FIXTURES, name), "utf8"));
}

describe("templates", () => {
  it("covers the seven figure templates", () => {
    expect(Object.keys(TEMPLATES).sort()).toEqual(
      ["fig2", "fig3", "fig4", "fig6a", "fig6cd", "fig7", "fig8"],
    );
    expect(Object.keys(FIXTURE_JOBS).sort()).toEqual(Object.keys(TEMPLATES).sort());
  });

  for (const [template, files] of Object.entries(FIXTURE_JOBS)) {
    it(`renders ${template} from fixtures`, () => {
      const svg = render(template, files.map(load));
      expect(svg.startsWith("<?xml")).toBe(true);
      expect(svg).toContain("<svg");
      expect(svg.trimEnd().endsWith("</svg>")).toBe(true);
    });
  }

  it("is byte-deterministic across repeated renders", () => {
    for (const [template, files] of Object.entries(FIXTURE_JOBS)) {
      const a = render(template, files.map(load));
      const b = render(template, files.map(load));
      expect(a).toBe(b);
    }
  });

  it("writes all seven files through the driver, deterministically", () => {
    const dirA = mkdtempSync(join(tmpdir(), "figkit-"));
    const dirB = mkdtempSync(join(tmpdir(), "figkit-"));
    const a = renderAll(dirA);
    const b = renderAll(dirB);
    expect(a).toHaveLength(7);
    for (let i = 0; i < a.length; i++) {
      expect(readFileSync(a[i], "utf8")).toBe(readFileSync(b[i], "utf8"));
    }
  });

  it("rejects wrong input counts and missing columns", () => {
    expect(() => render("fig3", [load("fig3_hadamard.csv")])).toThrow(SchemaError);
    expect(() => render("fig8", [load("fig3_hadamard.csv"), load("fig3_pi8.csv")]))
      .toThrow(/missing column 'longitude'/);
    expect(() => render("fig2", [load("fig4_hadamard.csv")])).toThrow(SchemaError);
    expect(() => render("nope", [load("fig2.csv")])).toThrow(/unknown template/);
  });

  it("draws every scheme curve in fig4", () => {
    const svg = render("fig4", [load("fig4_hadamard.csv"), load("fig4_pi8.csv")]);
    for (const label of ["NSGP", "OSSP", "DYN"]) {
      expect(svg).toContain(label);
    }
    expect((svg.match(/<polyline/g) ?? []).length).toBeGreaterThanOrEqual(6);
  });

  it("renders one heatmap cell per grid point in fig8", () => {
    const svg = render("fig8", [load("fig8_hadamard.csv"), load("fig8_pi8.csv")]);
    const cells = (svg.match(/<rect/g) ?? []).length;
    expect(cells).toBeGreaterThanOrEqual(2 * 41 * 41);
  });
});
