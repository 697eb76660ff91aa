/**
 * Probability heatmaps from run outputs.
 *
 * The renderer recomputes the total of the grid it draws and refuses to
 * produce an image when that total disagrees with the sidecar's
 * recorded sum beyond TOTAL_TOLERANCE: a plot must show the data it
 * claims to show.
 */

import { Grid, gridTotal, loadGrid } from "./data.js";
import { Sidecar, SidecarError, gridEntry } from "./sidecar.js";
import { StyleName, heatColor, spinColor } from "./color.js";
import { rect, svgDocument, text } from "./svg.js";

export const TOTAL_TOLERANCE = 1e-9;

export interface HeatmapResult {
  svg: string;
  /** Recomputed total of the plotted grid. */
  total: number;
}

export interface HeatmapOptions {
  gridName?: string;
  style?: StyleName;
  cellSize?: number;
  title?: string;
}

export function renderHeatmap(
  sidecar: Sidecar,
  dir: string,
  options: HeatmapOptions = {},
): HeatmapResult {
  const gridName = options.gridName ?? "probability_spin_up";
  const style = options.style ?? "heat";
  const cell = options.cellSize ?? 4;

  const grid = loadGrid(sidecar, dir, gridName);
  const total = gridTotal(grid);
  const declared = gridEntry(sidecar, gridName).sum;
  if (Math.abs(total - declared) > TOTAL_TOLERANCE) {
    throw new SidecarError(
      `grid '${gridName}' sums to ${total}, sidecar declares ${declared}; refusing to render`,
    );
  }

  let totalGrid: Grid | null = null;
  if (style === "spin") {
    totalGrid = loadGrid(sidecar, dir, "probability_total");
  }

  const margin = 18;
  const width = grid.cols * cell + 2 * margin;
  const height = grid.rows * cell + 2 * margin + 14;
  let peak = 0;
  for (let i = 0; i < grid.values.length; i++) {
    if (grid.values[i] > peak) peak = grid.values[i];
  }
  const scale = peak > 0 ? 1 / peak : 1;

  const body: string[] = [rect(0, 0, width, height, "#ffffff")];
  for (let r = 0; r < grid.rows; r++) {
    for (let c = 0; c < grid.cols; c++) {
      const value = grid.values[r * grid.cols + c];
      let fill: string;
      if (style === "spin" && totalGrid) {
        const totalValue = totalGrid.values[r * grid.cols + c];
        const fraction = totalValue > 0 ? value / totalValue : 0.5;
        fill = spinColor(fraction, Math.sqrt(totalValue * scale));
      } else {
        fill = heatColor(value * scale);
      }
      // x axis runs down the rows (matrix convention: row = x site)
      body.push(rect(margin + c * cell, margin + r * cell, cell, cell, fill));
    }
  }
  const title = options.title ?? `${gridName} (sum ${total.toExponential(6)})`;
  body.push(text(margin, height - 6, title));
  return { svg: svgDocument(width, height, body), total };
}
