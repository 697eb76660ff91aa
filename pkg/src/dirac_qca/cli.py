"""Command-line front end.

Subcommands: run, validate, export-dispersion, export-group-velocity,
compare-asymptotics.  Flags override config-file values.  Exit codes:
0 success, 2 validation failure, 3 I/O failure, 1 anything else; on
failure a one-line JSON object {"category", "message"} goes to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Dict, Optional

import numpy as np

from . import asymptotics, dirac2d, scenario
from . import lattice as lat

_EXIT_CODES = {"validation": 2, "io": 3}


def _error_exit(category: str, message: str) -> int:
    print(json.dumps({"category": category, "message": message}), file=sys.stderr)
    return _EXIT_CODES.get(category, 1)


def _load_config_dict(args) -> Dict:
    if args.preset:
        raw = scenario.preset_config(args.preset)
    elif args.config:
        try:
            with open(args.config, "r", encoding="utf-8") as handle:
                raw = json.load(handle)
        except OSError as exc:
            raise scenario.ScenarioError("io", f"cannot read config: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise scenario.ScenarioError("validation", f"config is not valid JSON: {exc}") from exc
    else:
        raise scenario.ScenarioError("validation", "provide a config file or --preset")

    # Flag overrides.
    if args.steps is not None:
        raw["steps"] = args.steps
    if args.engine is not None:
        raw["engine"] = args.engine
    if getattr(args, "mass", None) is not None:
        raw.setdefault("params", {})["mass"] = args.mass
    if args.output_dir is not None:
        raw["output_dir"] = args.output_dir
    return raw


def _cmd_run(args) -> int:
    raw = _load_config_dict(args)
    config = scenario.config_from_dict(raw)
    record = scenario.run(config)
    outdir = config.output_dir or os.environ.get(scenario.OUTPUT_DIR_ENV)
    summary = {
        "steps": config.steps,
        "norm_final": float(record.norm_trace[-1]),
        "peak_final": [int(v) for v in record.peak_trajectory[-1]],
        "output_dir": outdir,
    }
    print(json.dumps(summary, sort_keys=True))
    return 0


def _cmd_validate(args) -> int:
    raw = _load_config_dict(args)
    config = scenario.config_from_dict(raw)
    scenario.validate_no_wrap(config)
    print(json.dumps({"valid": True}))
    return 0


def _cmd_export_dispersion(args) -> int:
    outdir = args.output_dir or os.environ.get(scenario.OUTPUT_DIR_ENV)
    if not outdir:
        raise scenario.ScenarioError("validation", "an output directory is required")
    chi = complex(args.chi_re, args.chi_im)
    paths = scenario.export_dispersion(args.dimension, args.mass, chi, args.resolution, outdir)
    print(json.dumps({"written": sorted(os.path.basename(p) for p in paths.values())}))
    return 0


def _cmd_export_group_velocity(args) -> int:
    outdir = args.output_dir or os.environ.get(scenario.OUTPUT_DIR_ENV)
    if not outdir:
        raise scenario.ScenarioError("validation", "an output directory is required")
    params = dirac2d.AutomatonParams2D(args.mass, complex(args.chi_re, args.chi_im))
    paths = scenario.export_group_velocity_surface(params, args.resolution, outdir)
    print(json.dumps({"written": sorted(os.path.basename(p) for p in paths.values())}))
    return 0


def _cmd_compare_asymptotics(args) -> int:
    length: Optional[int] = args.length
    if length is None:
        support = 2 * int(np.ceil(lat.SUPPORT_RADII * args.width)) + 1
        length = 1 << int(np.ceil(np.log2(2 * args.steps + support + 2)))
    spec = lat.WavepacketSpec(
        center=(length / 2,),
        width=(args.width,),
        momentum=(args.momentum,),
        band=args.band,
    )
    discrepancy = asymptotics.compare_to_automaton(spec, args.mass, args.steps, length)
    result = {
        "mass": args.mass,
        "momentum": args.momentum,
        "width": args.width,
        "steps": args.steps,
        "band": args.band,
        "length": length,
        "discrepancy": discrepancy,
    }
    print(json.dumps(result, sort_keys=True))
    if args.output_dir:
        os.makedirs(args.output_dir, exist_ok=True)
        payload = {"format_version": scenario.SIDECAR_FORMAT_VERSION, "kind": "comparison", **result}
        scenario._atomic_write_text(
            os.path.join(args.output_dir, "comparison.json"),
            json.dumps(payload, indent=2, sort_keys=True) + "\n",
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dirac-qca",
        description="Dirac quantum cellular automaton: runs, dispersion exports, asymptotics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_config_args(p):
        p.add_argument("config", nargs="?", help="JSON scenario config")
        p.add_argument("--preset", choices=sorted(scenario.PRESETS), help="built-in scenario")
        p.add_argument("--steps", type=int, default=None)
        p.add_argument("--engine", choices=["stencil", "spectral"], default=None)
        p.add_argument("--mass", type=float, default=None)
        p.add_argument("--output-dir", default=None)

    p_run = sub.add_parser("run", help="execute a scenario and write outputs")
    add_config_args(p_run)
    p_run.set_defaults(func=_cmd_run)

    p_val = sub.add_parser("validate", help="check a config without running")
    add_config_args(p_val)
    p_val.set_defaults(func=_cmd_validate)

    p_disp = sub.add_parser("export-dispersion", help="sample the dispersion relation")
    p_disp.add_argument("--dimension", type=int, choices=[1, 2], required=True)
    p_disp.add_argument("--mass", type=float, required=True)
    p_disp.add_argument("--chi-re", type=float, default=1.0)
    p_disp.add_argument("--chi-im", type=float, default=0.0)
    p_disp.add_argument("--resolution", type=int, default=128)
    p_disp.add_argument("--output-dir", default=None)
    p_disp.set_defaults(func=_cmd_export_dispersion)

    p_gv = sub.add_parser("export-group-velocity", help="sample the 2D group-velocity surface")
    p_gv.add_argument("--mass", type=float, required=True)
    p_gv.add_argument("--chi-re", type=float, default=1.0)
    p_gv.add_argument("--chi-im", type=float, default=0.0)
    p_gv.add_argument("--resolution", type=int, default=128)
    p_gv.add_argument("--output-dir", default=None)
    p_gv.set_defaults(func=_cmd_export_group_velocity)

    p_cmp = sub.add_parser(
        "compare-asymptotics", help="automaton versus drift-diffusion discrepancy"
    )
    p_cmp.add_argument("--mass", type=float, required=True)
    p_cmp.add_argument("--momentum", type=float, required=True)
    p_cmp.add_argument("--width", type=float, required=True)
    p_cmp.add_argument("--steps", type=int, required=True)
    p_cmp.add_argument("--band", type=int, choices=[-1, 1], default=1)
    p_cmp.add_argument("--length", type=int, default=None)
    p_cmp.add_argument("--output-dir", default=None)
    p_cmp.set_defaults(func=_cmd_compare_asymptotics)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except scenario.ScenarioError as exc:
        return _error_exit(exc.category, str(exc))
    except ValueError as exc:
        return _error_exit("validation", str(exc))
    except OSError as exc:
        return _error_exit("io", str(exc))


if __name__ == "__main__":
    sys.exit(main())
