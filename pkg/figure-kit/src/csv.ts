/**
 * Reader for the geogate CSV artifact schema:
 *   # key = value          metadata lines
 *   col1,col2,...          header row
 *   1.23,4.56,...          '%.12g' floats
 */

export interface BenchCsv {
  meta: Record<string, string>;
  header: string[];
  rows: number[][];
}

export class SchemaError extends Error {}

export function parseCsv(text: string): BenchCsv {
  const meta: Record<string, string> = {};
  let header: string[] | null = null;
  const rows: number[][] = [];
  for (const raw of text.split("\n")) {
    const line = raw.trim();
    if (line === "") continue;
    if (line.startsWith("#")) {
      const eq = line.indexOf("=");
      if (eq > 0) meta[line.slice(1, eq).trim()] = line.slice(eq + 1).trim();
      continue;
    }
    if (header === null) {
      header = line.split(",").map((s) => s.trim());
      continue;
    }
    const values = line.split(",").map(Number);
    if (values.some((v) => Number.isNaN(v))) {
      throw new SchemaError(`non-numeric row: ${line}`);
    }
    if (values.length !== header.length) {
      throw new SchemaError(
        `row has ${values.length} fields, header has ${header.length}`,
      );
    }
    rows.push(values);
  }
  if (header === null || rows.length === 0) {
    throw new SchemaError("no header or data rows found");
  }
  return { meta, header, rows };
}

export function column(csv: BenchCsv, name: string): number[] {
  const idx = csv.header.indexOf(name);
  if (idx < 0) {
    throw new SchemaError(
      `missing column '${name}' (have: ${csv.header.join(", ")})`,
    );
  }
  return csv.rows.map((r) => r[idx]);
}

export function hasColumn(csv: BenchCsv, name: string): boolean {
  return csv.header.includes(name);
}

/** Reshape a long-format (x, y, value) grid that was written x-major. */
export function gridColumn(
  csv: BenchCsv,
  name: string,
): { xs: number[]; ys: number[]; values: number[][] } {
  const x = column(csv, "delta");
  const y = column(csv, "epsilon");
  const v = column(csv, name);
  const xs = [...new Set(x)];
  const ys = [...new Set(y)];
  if (xs.length * ys.length !== v.length) {
    throw new SchemaError(
      `grid shape mismatch: ${xs.length} x ${ys.length} != ${v.length} rows`,
    );
  }
  const values: number[][] = [];
  for (let i = 0; i < xs.length; i++) {
    values.push(v.slice(i * ys.length, (i + 1) * ys.length));
  }
  return { xs, ys, values };
}
