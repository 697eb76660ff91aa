/**
 * Generates render fixtures by driving the simulation CLI: the four
 * fig2 presets plus the fig1 group-velocity surface.  Everything the
 * tests read crosses the documented file formats; nothing is shared
 * in-process.
 */

import { execFileSync } from "node:child_process";
import * as fs from "node:fs";
import * as path from "node:path";
import { fileURLToPath } from "node:url";

const here = path.dirname(fileURLToPath(import.meta.url));
export const FIXTURE_ROOT = path.join(here, "fixtures");
const REPO_ROOT = path.join(here, "..", "..");

function cli(args: string[]): void {
  execFileSync("python3", ["-m", "dirac_qca.cli", ...args], {
    cwd: REPO_ROOT,
    env: { ...process.env, PYTHONPATH: path.join(REPO_ROOT, "src") },
    stdio: ["ignore", "ignore", "inherit"],
  });
}

export default function setup(): void {
  for (const preset of ["fig2a", "fig2b", "fig2c", "fig2d"]) {
    const dir = path.join(FIXTURE_ROOT, preset);
    if (!fs.existsSync(path.join(dir, "sidecar.json"))) {
      cli(["run", "--preset", preset, "--output-dir", dir]);
    }
  }
  const fig1 = path.join(FIXTURE_ROOT, "fig1");
  if (!fs.existsSync(path.join(fig1, "sidecar.json"))) {
    cli(["export-group-velocity", "--mass", "0", "--resolution", "128", "--output-dir", fig1]);
  }
}
