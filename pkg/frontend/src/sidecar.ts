/**
 * Sidecar metadata: the versioned index every output directory carries.
 * Loaders reject unknown schema versions and structurally broken files
 * before any payload is touched.
 */

import * as fs from "node:fs";
import * as path from "node:path";

export const SUPPORTED_FORMAT_VERSION = 1;

export interface GridEntry {
  file: string;
  dtype: string;
  shape: number[];
  order: string;
  sum: number;
}

export interface Sidecar {
  format_version: number;
  kind: string;
  grids: Record<string, GridEntry>;
  tables: Record<string, string>;
  norm_final?: number;
  max_magnitude?: number;
  momentum_axis?: { start: number; step: number; count: number };
  config?: unknown;
  [key: string]: unknown;
}

export class SidecarError extends Error {}

export function loadSidecar(sidecarPath: string): { sidecar: Sidecar; dir: string } {
  let raw: string;
  try {
    raw = fs.readFileSync(sidecarPath, "utf-8");
  } catch (err) {
    throw new SidecarError(`cannot read sidecar ${sidecarPath}: ${(err as Error).message}`);
  }
  let parsed: unknown;
  try {
    parsed = JSON.parse(raw);
  } catch (err) {
    throw new SidecarError(`sidecar is not valid JSON: ${(err as Error).message}`);
  }
  const sidecar = parsed as Sidecar;
  if (sidecar.format_version !== SUPPORTED_FORMAT_VERSION) {
    throw new SidecarError(
      `unsupported sidecar format_version ${sidecar.format_version}; ` +
        `this renderer supports ${SUPPORTED_FORMAT_VERSION}`,
    );
  }
  if (typeof sidecar.kind !== "string") {
    throw new SidecarError("sidecar is missing its 'kind'");
  }
  sidecar.grids = sidecar.grids ?? {};
  sidecar.tables = sidecar.tables ?? {};
  return { sidecar, dir: path.dirname(sidecarPath) };
}

export function gridEntry(sidecar: Sidecar, name: string): GridEntry {
  const entry = sidecar.grids[name];
  if (!entry) {
    throw new SidecarError(
      `sidecar has no grid '${name}'; available: ${Object.keys(sidecar.grids).join(", ") || "none"}`,
    );
  }
  return entry;
}
