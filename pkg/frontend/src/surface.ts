/**
 * Isometric surface plots for Brillouin-zone fields (the group-velocity
 * magnitude surface).  Quads are drawn back to front in a fixed order,
 * so the output is deterministic.
 */

import { loadGrid } from "./data.js";
import { Sidecar } from "./sidecar.js";
import { heatColor } from "./color.js";
import { polygon, rect, svgDocument, text } from "./svg.js";

export interface SurfaceOptions {
  gridName?: string;
  /** Downsample to at most this many cells per axis. */
  maxCells?: number;
  title?: string;
}

export interface SurfaceResult {
  svg: string;
  min: number;
  max: number;
}

export function renderSurface(
  sidecar: Sidecar,
  dir: string,
  options: SurfaceOptions = {},
): SurfaceResult {
  const gridName = options.gridName ?? "vmag";
  const grid = loadGrid(sidecar, dir, gridName);
  const maxCells = options.maxCells ?? 64;
  const strideR = Math.max(1, Math.ceil(grid.rows / maxCells));
  const strideC = Math.max(1, Math.ceil(grid.cols / maxCells));
  const rows: number[] = [];
  for (let r = 0; r < grid.rows; r += strideR) rows.push(r);
  const cols: number[] = [];
  for (let c = 0; c < grid.cols; c += strideC) cols.push(c);

  let min = Infinity;
  let max = -Infinity;
  for (let i = 0; i < grid.values.length; i++) {
    const v = grid.values[i];
    if (v < min) min = v;
    if (v > max) max = v;
  }
  const span = max > min ? max - min : 1;

  const cell = 10;
  const heightScale = 120;
  const cosIso = Math.cos(Math.PI / 6);
  const sinIso = Math.sin(Math.PI / 6);
  const project = (ri: number, ci: number, value: number): [number, number] => {
    const u = (ci - ri) * cell * cosIso;
    const v = (ci + ri) * cell * sinIso - ((value - min) / span) * heightScale;
    return [u, v];
  };

  // Corner extents over the flat base plus headroom for the peaks.
  const nR = rows.length - 1;
  const nC = cols.length - 1;
  const uMin = -nR * cell * cosIso;
  const uMax = nC * cell * cosIso;
  const vMax = (nC + nR) * cell * sinIso;
  const margin = 24;
  const width = uMax - uMin + 2 * margin;
  const height = vMax + heightScale + 2 * margin + 14;
  const ox = margin - uMin;
  const oy = margin + heightScale;

  const body: string[] = [rect(0, 0, width, height, "#ffffff")];
  // Painter's order: increasing ci + ri keeps nearer quads on top.
  for (let a = 0; a <= nR + nC - 2; a++) {
    for (let i = 0; i < nR; i++) {
      const j = a - i;
      if (j < 0 || j >= nC) continue;
      const r0 = rows[i];
      const r1 = rows[i + 1];
      const c0 = cols[j];
      const c1 = cols[j + 1];
      const v00 = grid.values[r0 * grid.cols + c0];
      const v01 = grid.values[r0 * grid.cols + c1];
      const v10 = grid.values[r1 * grid.cols + c0];
      const v11 = grid.values[r1 * grid.cols + c1];
      const mean = (v00 + v01 + v10 + v11) / 4;
      const points: Array<[number, number]> = [
        project(i, j, v00),
        project(i, j + 1, v01),
        project(i + 1, j + 1, v11),
        project(i + 1, j, v10),
      ].map(([u, v]) => [u + ox, v + oy]);
      body.push(polygon(points, heatColor((mean - min) / span), "#00000022"));
    }
  }
  const title = options.title ?? `${gridName} (min ${min.toFixed(4)}, max ${max.toFixed(4)})`;
  body.push(text(margin, height - 6, title));
  return { svg: svgDocument(width, height, body), min, max };
}
