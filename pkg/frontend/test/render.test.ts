import * as fs from "node:fs";
import * as path from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { gridTotal, loadGrid } from "../src/data.js";
import { renderHeatmap, TOTAL_TOLERANCE } from "../src/heatmap.js";
import { renderSurface } from "../src/surface.js";
import { renderTrace } from "../src/trace.js";
import { loadSidecar } from "../src/sidecar.js";

const here = path.dirname(fileURLToPath(import.meta.url));
const FIXTURES = path.join(here, "fixtures");
const PRESETS = ["fig2a", "fig2b", "fig2c", "fig2d"] as const;

function openRun(name: string) {
  return loadSidecar(path.join(FIXTURES, name, "sidecar.json"));
}

describe("fig2 heatmaps", () => {
  for (const preset of PRESETS) {
    it(`renders ${preset} and matches the sidecar totals`, () => {
      const { sidecar, dir } = openRun(preset);
      const spinUp = renderHeatmap(sidecar, dir, { gridName: "probability_spin_up" });
      expect(spinUp.svg).toContain("<svg");
      expect(Math.abs(spinUp.total - sidecar.grids["probability_spin_up"].sum)).toBeLessThanOrEqual(
        TOTAL_TOLERANCE,
      );

      const total = renderHeatmap(sidecar, dir, { gridName: "probability_total" });
      // The plotted probability accounts for the recorded final norm.
      expect(Math.abs(total.total - (sidecar.norm_final as number))).toBeLessThanOrEqual(1e-9);
    });
  }

  it("renders the spin-blended style", () => {
    const { sidecar, dir } = openRun("fig2a");
    const result = renderHeatmap(sidecar, dir, { gridName: "probability_spin_up", style: "spin" });
    expect(result.svg).toContain("<rect");
  });

  it("is idempotent and does not mutate the payload", () => {
    const { sidecar, dir } = openRun("fig2c");
    const grid = loadGrid(sidecar, dir, "probability_spin_up");
    const before = Array.from(grid.values.slice(0, 16));
    const a = renderHeatmap(sidecar, dir, {});
    const b = renderHeatmap(sidecar, dir, {});
    expect(a.svg).toEqual(b.svg);
    expect(Array.from(grid.values.slice(0, 16))).toEqual(before);
  });

  it("refuses to render when the payload disagrees with the sidecar", () => {
    const { sidecar, dir } = openRun("fig2b");
    const broken = structuredClone(sidecar);
    broken.grids["probability_spin_up"].sum += 1e-3;
    expect(() => renderHeatmap(broken, dir, {})).toThrowError(/refusing to render/);
  });

  it("renders an all-zero map as a uniform image", () => {
    const dir = fs.mkdtempSync(path.join(FIXTURES, "vacuum-"));
    try {
      const zeros = Buffer.alloc(4 * 4 * 8);
      fs.writeFileSync(path.join(dir, "probability_total.bin"), zeros);
      const sidecar = {
        format_version: 1,
        kind: "run",
        grids: {
          probability_total: {
            file: "probability_total.bin",
            dtype: "<f8",
            shape: [4, 4],
            order: "row-major",
            sum: 0,
          },
        },
        tables: {},
      };
      fs.writeFileSync(path.join(dir, "sidecar.json"), JSON.stringify(sidecar));
      const { sidecar: loaded, dir: loadedDir } = loadSidecar(path.join(dir, "sidecar.json"));
      const result = renderHeatmap(loaded, loadedDir, { gridName: "probability_total" });
      expect(result.total).toBe(0);
      const fills = [...result.svg.matchAll(/<rect [^>]*fill="(#[0-9a-f]{6})"/g)].map((m) => m[1]);
      // one background rect plus 16 identically colored cells
      expect(new Set(fills.slice(1)).size).toBe(1);
    } finally {
      fs.rmSync(dir, { recursive: true, force: true });
    }
  });
});

describe("fig1 surface", () => {
  it("renders the group-velocity magnitude", () => {
    const { sidecar, dir } = loadSidecar(path.join(FIXTURES, "fig1", "sidecar.json"));
    const result = renderSurface(sidecar, dir, { gridName: "vmag" });
    expect(result.svg).toContain("<polygon");
    expect(result.max).toBeLessThanOrEqual(1 + 1e-12);
    expect(result.max).toBeCloseTo(sidecar.max_magnitude as number, 12);
    // Zone-edge midpoints carry zero speed.
    const grid = loadGrid(sidecar, dir, "vmag");
    expect(grid.values[0 * grid.cols + grid.cols / 2]).toBeLessThan(1e-12);
  });
});

describe("traces", () => {
  it("renders the norm trace", () => {
    const { sidecar, dir } = openRun("fig2a");
    const svg = renderTrace(sidecar, dir, { tableName: "norm_trace" });
    expect(svg).toContain("<polyline");
  });

  it("renders the peak trajectory", () => {
    const { sidecar, dir } = openRun("fig2a");
    const svg = renderTrace(sidecar, dir, { tableName: "peak_trajectory" });
    expect(svg).toContain("<polyline");
  });
});

describe("schema guards", () => {
  it("rejects unknown format versions", () => {
    const sidecarPath = path.join(FIXTURES, "fig2a", "sidecar.json");
    const raw = JSON.parse(fs.readFileSync(sidecarPath, "utf-8"));
    raw.format_version = 99;
    const tmp = path.join(FIXTURES, "broken-sidecar.json");
    fs.writeFileSync(tmp, JSON.stringify(raw));
    expect(() => loadSidecar(tmp)).toThrowError(/format_version/);
    fs.rmSync(tmp);
  });

  it("rejects dimension mismatches", () => {
    const { sidecar, dir } = openRun("fig2a");
    const broken = structuredClone(sidecar);
    broken.grids["probability_total"].shape = [10, 10];
    expect(() => loadGrid(broken, dir, "probability_total")).toThrowError(/bytes on disk/);
  });

  it("reports missing grids with the available names", () => {
    const { sidecar, dir } = openRun("fig2a");
    expect(() => loadGrid(sidecar, dir, "nope")).toThrowError(/available/);
  });
});

describe("payload decoding", () => {
  it("matches the declared sums for every fixture grid", () => {
    for (const preset of PRESETS) {
      const { sidecar, dir } = openRun(preset);
      for (const name of Object.keys(sidecar.grids)) {
        const grid = loadGrid(sidecar, dir, name);
        expect(Math.abs(gridTotal(grid) - sidecar.grids[name].sum)).toBeLessThanOrEqual(1e-9);
      }
    }
  });
});
