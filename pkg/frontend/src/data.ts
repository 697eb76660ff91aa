/**
 * Payload readers: little-endian float64 row-major grids and the CSV
 * traces.  Decoding goes through DataView with an explicit endianness
 * flag, so it is correct on any host.
 */

import * as fs from "node:fs";
import * as path from "node:path";

import { GridEntry, Sidecar, SidecarError, gridEntry } from "./sidecar.js";

export interface Grid {
  rows: number;
  cols: number;
  /** Row-major values; index [r * cols + c]. */
  values: Float64Array;
}

export function readGridFile(filePath: string, entry: GridEntry): Grid {
  if (entry.dtype !== "<f8") {
    throw new SidecarError(`grid ${entry.file}: unsupported dtype ${entry.dtype}`);
  }
  if (entry.order !== "row-major") {
    throw new SidecarError(`grid ${entry.file}: unsupported order ${entry.order}`);
  }
  if (entry.shape.length !== 2) {
    throw new SidecarError(`grid ${entry.file}: expected a 2D shape, got [${entry.shape}]`);
  }
  const [rows, cols] = entry.shape;
  const buf = fs.readFileSync(filePath);
  const expectedBytes = rows * cols * 8;
  if (buf.byteLength !== expectedBytes) {
    throw new SidecarError(
      `grid ${entry.file}: ${buf.byteLength} bytes on disk, shape [${rows}, ${cols}] needs ${expectedBytes}`,
    );
  }
  const view = new DataView(buf.buffer, buf.byteOffset, buf.byteLength);
  const values = new Float64Array(rows * cols);
  for (let i = 0; i < values.length; i++) {
    values[i] = view.getFloat64(i * 8, true);
  }
  return { rows, cols, values };
}

export function loadGrid(sidecar: Sidecar, dir: string, name: string): Grid {
  const entry = gridEntry(sidecar, name);
  return readGridFile(path.join(dir, entry.file), entry);
}

/** Sequential left-to-right sum, matching the writer's declared total. */
export function gridTotal(grid: Grid): number {
  let total = 0;
  for (let i = 0; i < grid.values.length; i++) {
    total += grid.values[i];
  }
  return total;
}

export interface Table {
  columns: string[];
  rows: number[][];
}

export function readCsv(filePath: string): Table {
  const text = fs.readFileSync(filePath, "utf-8").trim();
  const lines = text.split("\n");
  if (lines.length < 1) {
    throw new SidecarError(`empty CSV ${filePath}`);
  }
  const columns = lines[0].split(",");
  const rows = lines.slice(1).map((line, index) => {
    const cells = line.split(",").map(Number);
    if (cells.length !== columns.length || cells.some(Number.isNaN)) {
      throw new SidecarError(`CSV ${filePath}: bad row ${index + 2}`);
    }
    return cells;
  });
  return { columns, rows };
}

export function loadTable(sidecar: Sidecar, dir: string, name: string): Table {
  const file = sidecar.tables[name];
  if (!file) {
    throw new SidecarError(
      `sidecar has no table '${name}'; available: ${Object.keys(sidecar.tables).join(", ") || "none"}`,
    );
  }
  return readCsv(path.join(dir, file));
}
