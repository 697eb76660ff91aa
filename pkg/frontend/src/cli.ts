/**
 * Render CLI: --input <sidecar.json> --kind heatmap|surface|trace
 * --output <file.svg> [--grid NAME] [--table NAME] [--style heat|spin].
 * Exit codes: 0 success, 2 input/schema problems, 1 otherwise.
 */

import * as fs from "node:fs";
import * as path from "node:path";

import { loadSidecar, SidecarError } from "./sidecar.js";
import { renderHeatmap } from "./heatmap.js";
import { renderSurface } from "./surface.js";
import { renderTrace } from "./trace.js";
import { STYLE_NAMES, StyleName } from "./color.js";

interface Args {
  input: string;
  kind: string;
  output: string;
  grid?: string;
  table?: string;
  style?: StyleName;
}

function parseArgs(argv: string[]): Args {
  const out: Partial<Args> = {};
  for (let i = 0; i < argv.length; i += 2) {
    const key = argv[i];
    const value = argv[i + 1];
    if (value === undefined) throw new SidecarError(`missing value for ${key}`);
    switch (key) {
      case "--input":
        out.input = value;
        break;
      case "--kind":
        out.kind = value;
        break;
      case "--output":
        out.output = value;
        break;
      case "--grid":
        out.grid = value;
        break;
      case "--table":
        out.table = value;
        break;
      case "--style":
        if (!STYLE_NAMES.includes(value as StyleName)) {
          throw new SidecarError(`unknown style '${value}'; known: ${STYLE_NAMES.join(", ")}`);
        }
        out.style = value as StyleName;
        break;
      default:
        throw new SidecarError(`unknown argument ${key}`);
    }
  }
  for (const required of ["input", "kind", "output"] as const) {
    if (!out[required]) throw new SidecarError(`--${required} is required`);
  }
  return out as Args;
}

export function main(argv: string[]): number {
  let args: Args;
  try {
    args = parseArgs(argv);
    const { sidecar, dir } = loadSidecar(args.input);
    let svg: string;
    if (args.kind === "heatmap") {
      svg = renderHeatmap(sidecar, dir, { gridName: args.grid, style: args.style }).svg;
    } else if (args.kind === "surface") {
      svg = renderSurface(sidecar, dir, { gridName: args.grid }).svg;
    } else if (args.kind === "trace") {
      svg = renderTrace(sidecar, dir, { tableName: args.table });
    } else {
      throw new SidecarError(`unknown kind '${args.kind}'; known: heatmap, surface, trace`);
    }
    fs.mkdirSync(path.dirname(path.resolve(args.output)), { recursive: true });
    fs.writeFileSync(args.output, svg, "utf-8");
    console.log(JSON.stringify({ written: args.output, bytes: svg.length }));
    return 0;
  } catch (err) {
    if (err instanceof SidecarError) {
      console.error(JSON.stringify({ category: "input", message: err.message }));
      return 2;
    }
    console.error(JSON.stringify({ category: "internal", message: (err as Error).message }));
    return 1;
  }
}

if (process.argv[1] && path.basename(process.argv[1]).startsWith("cli")) {
  process.exit(main(process.argv.slice(2)));
}
