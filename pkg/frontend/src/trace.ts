/** Line plots for the CSV traces (norm per step, peak trajectory). */

import { Table, loadTable } from "./data.js";
import { Sidecar, SidecarError } from "./sidecar.js";
import { line, polyline, rect, svgDocument, text } from "./svg.js";

export interface TraceOptions {
  tableName?: string;
  width?: number;
  height?: number;
}

const SERIES_COLORS = ["#1f77b4", "#d62728", "#2ca02c"];

export function renderTrace(sidecar: Sidecar, dir: string, options: TraceOptions = {}): string {
  const tableName = options.tableName ?? "norm_trace";
  const table: Table = loadTable(sidecar, dir, tableName);
  if (table.columns.length < 2 || table.rows.length < 2) {
    throw new SidecarError(`table '${tableName}' has too little data to plot`);
  }
  const width = options.width ?? 480;
  const height = options.height ?? 280;
  const margin = 40;

  const xs = table.rows.map((row) => row[0]);
  const xMin = Math.min(...xs);
  const xMax = Math.max(...xs);
  const yAll = table.rows.flatMap((row) => row.slice(1));
  let yMin = Math.min(...yAll);
  let yMax = Math.max(...yAll);
  if (yMax === yMin) {
    yMin -= 0.5;
    yMax += 0.5;
  }
  const sx = (x: number) => margin + ((x - xMin) / (xMax - xMin || 1)) * (width - 2 * margin);
  const sy = (y: number) => height - margin - ((y - yMin) / (yMax - yMin)) * (height - 2 * margin);

  const body: string[] = [rect(0, 0, width, height, "#ffffff")];
  body.push(line(margin, height - margin, width - margin, height - margin));
  body.push(line(margin, margin, margin, height - margin));
  for (let s = 1; s < table.columns.length; s++) {
    const points: Array<[number, number]> = table.rows.map((row) => [sx(row[0]), sy(row[s])]);
    body.push(polyline(points, SERIES_COLORS[(s - 1) % SERIES_COLORS.length]));
    body.push(text(width - margin - 90, margin + 14 * s, table.columns[s], 10));
  }
  body.push(text(margin, height - 8, `${table.columns[0]} from ${xMin} to ${xMax}`, 10));
  body.push(text(6, margin - 8, `${yMin.toPrecision(6)} .. ${yMax.toPrecision(6)}`, 10));
  return svgDocument(width, height, body);
}
