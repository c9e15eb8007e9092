/**
 * The seven figure templates. Each consumes one or more geogate CSV artifacts
 * (documented per template) and renders a deterministic SVG string.
 */
import { BenchCsv, SchemaError, column, gridColumn, hasColumn } from "./csv.js";
import {
  PALETTE,
  PanelBox,
  axes,
  colorbar,
  document,
  extent,
  heatmap,
  legend,
  linearScale,
  polyline,
} from "./svg.js";

export interface Template {
  inputs: string;
  render(csvs: BenchCsv[]): string;
}

function need(csvs: BenchCsv[], n: number, what: string): void {
  if (csvs.length !== n) {
    throw new SchemaError(`${what} needs ${n} input CSV(s), got ${csvs.length}`);
  }
}

function panelGrid(
  nx: number,
  ny: number,
  panel = { width: 260, height: 190 },
  margin = { left: 70, right: 40, top: 40, bottom: 60 },
  gap = { x: 70, y: 60 },
): { boxes: PanelBox[]; width: number; height: number } {
  const boxes: PanelBox[] = [];
  for (let j = 0; j < ny; j++) {
    for (let i = 0; i < nx; i++) {
      boxes.push({
        x: margin.left + i * (panel.width + gap.x),
        y: margin.top + j * (panel.height + gap.y),
        width: panel.width,
        height: panel.height,
      });
    }
  }
  return {
    boxes,
    width: margin.left + nx * panel.width + (nx - 1) * gap.x + margin.right,
    height: margin.top + ny * panel.height + (ny - 1) * gap.y + margin.bottom,
  };
}

function linePanel(
  box: PanelBox,
  t: number[],
  series: [string, number[]][],
  xlabel: string,
  ylabel: string,
  title: string,
  dashes: string[] = [],
): string {
  const [xlo, xhi] = extent(t);
  const [ylo, yhi] = extent(series.flatMap(([, v]) => v), 0.05);
  const sx = linearScale(xlo, xhi, box.x, box.x + box.width);
  const sy = linearScale(ylo, yhi, box.y + box.height, box.y);
  const lines = series.map(([, v], i) =>
    polyline(t, v, sx, sy, PALETTE[i % PALETTE.length], 1.5, dashes[i] ?? ""),
  );
  const entries: [string, string][] = series.map(([label], i) => [
    label,
    PALETTE[i % PALETTE.length],
  ]);
  return [
    axes(box, sx, sy, xlabel, ylabel, title),
    lines.join("\n"),
    legend(box, entries),
  ].join("\n");
}

// ---------------------------------------------------------------- templates

/** fig2: pulse synthesis (one `synthesize` CSV with both detuning variants) */
const fig2: Template = {
  inputs: "1 x synthesize CSV (t, omega, delta, phi, delta_inst)",
  render(csvs) {
    need(csvs, 1, "fig2");
    const c = csvs[0];
    const t = column(c, "t");
    for (const name of ["delta", "delta_inst", "phi"]) column(c, name);
    const { boxes, width, height } = panelGrid(2, 1);
    const a = linePanel(
      boxes[0],
      t,
      [
        ["constant detuning", column(c, "delta")],
        ["pointwise-null detuning", column(c, "delta_inst")],
      ],
      "t (us)",
      "detuning (rad/us)",
      "(a) detuning variants",
      ["", "5,3"],
    );
    const b = linePanel(
      boxes[1],
      t,
      [["drive phase", column(c, "phi")]],
      "t (us)",
      "phi (rad)",
      "(b) drive phase ramp",
    );
    return document(width, height, [a, b].join("\n"));
  },
};

/** fidelity-vs-kappa curves; one panel per input CSV, one curve per scheme */
const fig4: Template = {
  inputs: "2 x sweep-decoherence CSVs (hadamard, pi8)",
  render(csvs) {
    need(csvs, 2, "fig4");
    const { boxes, width, height } = panelGrid(2, 1);
    const parts: string[] = [];
    csvs.forEach((c, i) => {
      const schemes = c.header.filter((h) => !["kappa_ratio", "kappa"].includes(h));
      if (schemes.length === 0) throw new SchemaError("no scheme columns found");
      parts.push(
        linePanel(
          boxes[i],
          column(c, "kappa_ratio"),
          schemes.map((s) => [s.toUpperCase(), column(c, s)]),
          "kappa / Omega_m",
          "gate fidelity",
          `(${"ab"[i]}) ${c.meta["gate"] ?? ""}`,
        ),
      );
    });
    return document(width, height, parts.join("\n"));
  },
};

function heatmapFigure(csvs: BenchCsv[], schemes: string[]): string {
  const panels: { label: string; grid: ReturnType<typeof gridColumn> }[] = [];
  for (const c of csvs) {
    for (const s of schemes) {
      if (!hasColumn(c, s)) {
        throw new SchemaError(
          `missing column '${s}' (have: ${c.header.join(", ")})`,
        );
      }
      panels.push({
        label: `${s.toUpperCase()} ${c.meta["gate"] ?? ""}`,
        grid: gridColumn(c, s),
      });
    }
  }
  // one fixed color scale across every panel keeps the comparison honest
  const all = panels.flatMap((p) => p.grid.values.flat());
  const [lo, hi] = extent(all);
  const nx = schemes.length;
  const ny = csvs.length;
  const { boxes, width, height } = panelGrid(nx, ny, { width: 210, height: 190 });
  const parts: string[] = [];
  panels.forEach((p, i) => {
    const box = boxes[i];
    const sx = linearScale(p.grid.xs[0], p.grid.xs[p.grid.xs.length - 1], box.x,
      box.x + box.width);
    const sy = linearScale(p.grid.ys[0], p.grid.ys[p.grid.ys.length - 1],
      box.y + box.height, box.y);
    parts.push(heatmap(box, p.grid.xs, p.grid.ys, p.grid.values, lo, hi));
    parts.push(axes(box, sx, sy, "delta", "epsilon", p.label));
  });
  parts.push(
    colorbar({ x: width - 34, y: boxes[0].y, width: 12, height: 190 }, lo, hi),
  );
  return document(width, height, parts.join("\n"));
}

/** systematic-error heatmaps for the three main schemes, 2 x 3 grid */
const fig3: Template = {
  inputs: "2 x sweep-error-grid CSVs with nsgp/ossp/dyn columns",
  render(csvs) {
    need(csvs, 2, "fig3");
    return heatmapFigure(csvs, ["nsgp", "ossp", "dyn"]);
  },
};

/** longitude-scheme error heatmaps, 1 x 2 */
const fig8: Template = {
  inputs: "2 x sweep-error-grid CSVs with a longitude column",
  render(csvs) {
    need(csvs, 2, "fig8");
    return heatmapFigure(csvs, ["longitude"]);
  },
};

/** drive-amplitude trade-off curves from one or two optimize-omega scans */
const fig6a: Template = {
  inputs: "1-2 x optimize-omega CSVs (omega_mhz, fidelity)",
  render(csvs) {
    if (csvs.length < 1 || csvs.length > 2) {
      throw new SchemaError(`fig6a needs 1 or 2 input CSVs, got ${csvs.length}`);
    }
    const { boxes, width, height } = panelGrid(1, 1, { width: 360, height: 230 });
    const series: [string, number[]][] = csvs.map((c) => [
      c.meta["gate"] ?? "scan",
      column(c, "fidelity"),
    ]);
    const t = column(csvs[0], "omega_mhz");
    for (const c of csvs.slice(1)) {
      if (column(c, "omega_mhz").length !== t.length) {
        throw new SchemaError("omega grids of the scans differ");
      }
    }
    return document(
      width,
      height,
      linePanel(boxes[0], t, series, "Omega_m / 2 pi (MHz)", "gate fidelity",
        "drive-amplitude trade-off"),
    );
  },
};

/** population + state-fidelity dynamics of the two single-qubit gates */
const fig6cd: Template = {
  inputs: "2 x dynamics CSVs (t, pop0.., fs)",
  render(csvs) {
    need(csvs, 2, "fig6cd");
    const { boxes, width, height } = panelGrid(2, 1);
    const parts: string[] = [];
    csvs.forEach((c, i) => {
      const t = column(c, "t");
      const pops = c.header.filter((h) => h.startsWith("pop"));
      if (pops.length === 0) throw new SchemaError("no population columns found");
      const series: [string, number[]][] = pops.map((p) => [p, column(c, p)]);
      series.push(["state fidelity", column(c, "fs")]);
      parts.push(
        linePanel(boxes[i], t, series, "t (us)", "population / fidelity",
          `(${"cd"[i]}) ${c.meta["gate"] ?? ""} from |${c.meta["initial"] ?? "?"}>`),
      );
    });
    return document(width, height, parts.join("\n"));
  },
};

/** two-qubit gate: fidelity dynamics and state populations */
const fig7: Template = {
  inputs: "1 x two-qubit CSV (t, fg, p01, p10, p11, pleak, fs)",
  render(csvs) {
    need(csvs, 1, "fig7");
    const c = csvs[0];
    const t = column(c, "t");
    const { boxes, width, height } = panelGrid(2, 1);
    const a = linePanel(boxes[0], t, [["gate fidelity", column(c, "fg")]],
      "t (us)", "gate fidelity", "(a) gate-fidelity dynamics");
    const b = linePanel(
      boxes[1],
      t,
      [
        ["p01", column(c, "p01")],
        ["p10", column(c, "p10")],
        ["p11", column(c, "p11")],
        ["state fidelity", column(c, "fs")],
      ],
      "t (us)",
      "population / fidelity",
      "(b) populations from (|01>+|11>)/sqrt2",
    );
    return document(width, height, [a, b].join("\n"));
  },
};

export const TEMPLATES: Record<string, Template> = {
  fig2,
  fig3,
  fig4,
  fig6a,
  fig6cd,
  fig7,
  fig8,
};

export function render(template: string, csvs: BenchCsv[]): string {
  const t = TEMPLATES[template];
  if (!t) {
    throw new SchemaError(
      `unknown template '${template}' (have: ${Object.keys(TEMPLATES).join(", ")})`,
    );
  }
  return t.render(csvs);
}
