/**
 * Minimal deterministic SVG plotting: panels with linear axes, polylines and
 * heatmap cells. No smoothing or resampling anywhere; data maps straight to
 * coordinates so the renderer never reinterprets the numbers.
 */

export const FONT = "font-family=\"Helvetica, Arial, sans-serif\"";

export function fmt(x: number): string {
  if (!Number.isFinite(x)) throw new Error(`non-finite coordinate ${x}`);
  const v = Number(x.toPrecision(6));
  return Object.is(v, -0) ? "0" : String(v);
}

export interface PanelBox {
  x: number;
  y: number;
  width: number;
  height: number;
}

export interface Scale {
  lo: number;
  hi: number;
  map(v: number): number;
}

export function linearScale(lo: number, hi: number, a: number, b: number): Scale {
  const span = hi - lo || 1;
  return { lo, hi, map: (v: number) => a + ((v - lo) / span) * (b - a) };
}

export function extent(values: number[], pad = 0.0): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  const margin = (hi - lo || Math.abs(hi) || 1) * pad;
  return [lo - margin, hi + margin];
}

export function ticks(lo: number, hi: number, count = 5): number[] {
  const span = hi - lo || 1;
  const step0 = span / Math.max(1, count);
  const mag = Math.pow(10, Math.floor(Math.log10(step0)));
  let step = mag;
  for (const m of [1, 2, 2.5, 5, 10]) {
    if (m * mag >= step0) {
      step = m * mag;
      break;
    }
  }
  const out: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + 1e-12 * span; v += step) {
    out.push(Number(v.toPrecision(10)));
  }
  return out;
}

export const PALETTE = ["#c0392b", "#2471a3", "#1e8449", "#8e44ad", "#b7950b"];

// nine-stop viridis-like ramp, linearly interpolated
const RAMP: [number, number, number][] = [
  [68, 1, 84], [71, 44, 122], [59, 81, 139], [44, 113, 142], [33, 144, 141],
  [39, 173, 129], [92, 200, 99], [170, 220, 50], [253, 231, 37],
];

export function colormap(t: number): string {
  const u = Math.min(1, Math.max(0, t)) * (RAMP.length - 1);
  const i = Math.min(RAMP.length - 2, Math.floor(u));
  const f = u - i;
  const c = RAMP[i].map((a, k) => Math.round(a + f * (RAMP[i + 1][k] - a)));
  return `rgb(${c[0]},${c[1]},${c[2]})`;
}

export function polyline(
  xs: number[],
  ys: number[],
  sx: Scale,
  sy: Scale,
  color: string,
  width = 1.5,
  dash = "",
): string {
  const pts = xs.map((x, i) => `${fmt(sx.map(x))},${fmt(sy.map(ys[i]))}`).join(" ");
  const d = dash ? ` stroke-dasharray="${dash}"` : "";
  return `<polyline fill="none" stroke="${color}" stroke-width="${width}"${d} points="${pts}"/>`;
}

export function axes(
  box: PanelBox,
  sx: Scale,
  sy: Scale,
  xlabel: string,
  ylabel: string,
  title = "",
): string {
  const parts: string[] = [];
  parts.push(
    `<rect x="${fmt(box.x)}" y="${fmt(box.y)}" width="${fmt(box.width)}" ` +
      `height="${fmt(box.height)}" fill="none" stroke="#333" stroke-width="1"/>`,
  );
  for (const t of ticks(sx.lo, sx.hi)) {
    const px = sx.map(t);
    parts.push(
      `<line x1="${fmt(px)}" y1="${fmt(box.y + box.height)}" x2="${fmt(px)}" ` +
        `y2="${fmt(box.y + box.height + 4)}" stroke="#333"/>`,
      `<text x="${fmt(px)}" y="${fmt(box.y + box.height + 16)}" ${FONT} ` +
        `font-size="10" text-anchor="middle">${fmt(t)}</text>`,
    );
  }
  for (const t of ticks(sy.lo, sy.hi)) {
    const py = sy.map(t);
    parts.push(
      `<line x1="${fmt(box.x - 4)}" y1="${fmt(py)}" x2="${fmt(box.x)}" ` +
        `y2="${fmt(py)}" stroke="#333"/>`,
      `<text x="${fmt(box.x - 7)}" y="${fmt(py + 3)}" ${FONT} font-size="10" ` +
        `text-anchor="end">${fmt(t)}</text>`,
    );
  }
  parts.push(
    `<text x="${fmt(box.x + box.width / 2)}" y="${fmt(box.y + box.height + 32)}" ` +
      `${FONT} font-size="11" text-anchor="middle">${xlabel}</text>`,
    `<text x="${fmt(box.x - 44)}" y="${fmt(box.y + box.height / 2)}" ${FONT} ` +
      `font-size="11" text-anchor="middle" transform="rotate(-90 ` +
      `${fmt(box.x - 44)} ${fmt(box.y + box.height / 2)})">${ylabel}</text>`,
  );
  if (title) {
    parts.push(
      `<text x="${fmt(box.x + box.width / 2)}" y="${fmt(box.y - 8)}" ${FONT} ` +
        `font-size="12" text-anchor="middle">${title}</text>`,
    );
  }
  return parts.join("\n");
}

export function legend(
  box: PanelBox,
  entries: [string, string][],
  dx = 8,
  dy = 14,
): string {
  return entries
    .map(([label, color], i) => {
      const y = box.y + dy + 14 * i;
      return (
        `<line x1="${fmt(box.x + dx)}" y1="${fmt(y)}" x2="${fmt(box.x + dx + 18)}" ` +
        `y2="${fmt(y)}" stroke="${color}" stroke-width="2"/>` +
        `<text x="${fmt(box.x + dx + 23)}" y="${fmt(y + 3)}" ${FONT} ` +
        `font-size="10">${label}</text>`
      );
    })
    .join("\n");
}

export function heatmap(
  box: PanelBox,
  xs: number[],
  ys: number[],
  values: number[][],
  lo: number,
  hi: number,
): string {
  const cw = box.width / xs.length;
  const ch = box.height / ys.length;
  const cells: string[] = [];
  for (let i = 0; i < xs.length; i++) {
    for (let j = 0; j < ys.length; j++) {
      const t = (values[i][j] - lo) / (hi - lo || 1);
      // y axis grows upward: last epsilon row sits at the top
      const px = box.x + i * cw;
      const py = box.y + box.height - (j + 1) * ch;
      cells.push(
        `<rect x="${fmt(px)}" y="${fmt(py)}" width="${fmt(cw + 0.1)}" ` +
          `height="${fmt(ch + 0.1)}" fill="${colormap(t)}"/>`,
      );
    }
  }
  return cells.join("\n");
}

export function colorbar(
  box: PanelBox,
  lo: number,
  hi: number,
  steps = 64,
): string {
  const parts: string[] = [];
  const ch = box.height / steps;
  for (let i = 0; i < steps; i++) {
    parts.push(
      `<rect x="${fmt(box.x)}" y="${fmt(box.y + box.height - (i + 1) * ch)}" ` +
        `width="${fmt(box.width)}" height="${fmt(ch + 0.1)}" ` +
        `fill="${colormap(i / (steps - 1))}"/>`,
    );
  }
  parts.push(
    `<text x="${fmt(box.x + box.width + 4)}" y="${fmt(box.y + box.height)}" ${FONT} ` +
      `font-size="9">${fmt(lo)}</text>`,
    `<text x="${fmt(box.x + box.width + 4)}" y="${fmt(box.y + 8)}" ${FONT} ` +
      `font-size="9">${fmt(hi)}</text>`,
  );
  return parts.join("\n");
}

export function document(width: number, height: number, body: string): string {
  return (
    `<?xml version="1.0" encoding="UTF-8"?>\n` +
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}">\n<rect width="${width}" height="${height}" ` +
    `fill="white"/>\n${body}\n</svg>\n`
  );
}
