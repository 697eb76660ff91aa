"""Configuration-driven runs with reproducible, analysis-ready outputs.

A scenario is a JSON-shaped mapping with ``schema_version: 1`` (see
:data:`CONFIG_SCHEMA_VERSION`).  :func:`run` validates it, evolves the
configured initial state, and returns a :class:`RunRecord`; with an
output directory it also writes:

* ``sidecar.json``    - versioned metadata: config echo, payload index
  with per-grid sums, norm data, timings.  Timestamps live only here.
* 1D runs: ``probability_map.csv`` (site, p_up, p_down, p_total).
* 2D runs: ``probability_total.bin`` and ``probability_spin_up.bin``,
  little-endian float64, row-major (C order), dimensions in the sidecar.
* ``norm_trace.csv`` and ``peak_trajectory.csv`` for every run.

Data payloads are byte-identical across reruns of the same config; all
files are written atomically (write to a temp name, then rename).

Validation enforces the no-wrap condition ``L_axis > 2 T + support``
so the causal cone (one site per axis per step) never crosses the
periodic seam within the run horizon.
"""

from __future__ import annotations

import json
import os
import tempfile
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from . import dirac1d, dirac2d
from . import lattice as lat
from .planck import PlanckUnits, resolve_units

CONFIG_SCHEMA_VERSION = 1
SIDECAR_FORMAT_VERSION = 1
OUTPUT_DIR_ENV = "DIRAC_QCA_OUTPUT_DIR"


class ScenarioError(ValueError):
    """Configuration or execution failure with a machine-readable category."""

    def __init__(self, category: str, message: str):
        super().__init__(message)
        self.category = category


def _fail(message: str) -> None:
    raise ScenarioError("validation", message)


# ---------------------------------------------------------------------------
# Configuration


@dataclass(frozen=True)
class InitialStateConfig:
    kind: str  # vacuum | delta | gaussian
    center: Tuple[float, ...] = ()
    width: Tuple[float, ...] = ()
    momentum: Tuple[float, ...] = ()
    band: int = 1
    polarization: Optional[Tuple[complex, ...]] = None  # None: band eigenvector


@dataclass(frozen=True)
class ScenarioConfig:
    dimension: int
    lattice: Tuple[int, ...]
    mass: float
    steps: int
    initial_state: InitialStateConfig
    chi: complex = 1.0 + 0.0j
    engine: str = "stencil"
    probability: str = "total"  # total | per_component
    units_profile: Union[str, PlanckUnits] = "codata2018"
    output_dir: Optional[str] = None


def _complex_from_json(value) -> complex:
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    _fail(f"expected a number or [re, im] pair, got {value!r}")


def _complex_to_json(value: complex) -> List[float]:
    return [float(np.real(value)), float(np.imag(value))]


def config_from_dict(raw: Dict) -> ScenarioConfig:
    """Parse and validate a JSON-shaped config mapping."""
    if not isinstance(raw, dict):
        _fail("config must be a mapping")
    version = raw.get("schema_version")
    if version != CONFIG_SCHEMA_VERSION:
        _fail(f"unsupported schema_version {version!r}; expected {CONFIG_SCHEMA_VERSION}")

    dimension = raw.get("dimension")
    if dimension not in (1, 2):
        _fail(f"dimension must be 1 or 2, got {dimension!r}")

    lattice_raw = raw.get("lattice")
    if dimension == 1:
        if not isinstance(lattice_raw, dict) or "length" not in lattice_raw:
            _fail("1D lattice must be {'length': L}")
        sizes: Tuple[int, ...] = (int(lattice_raw["length"]),)
    else:
        if not isinstance(lattice_raw, dict) or not {"lx", "ly"} <= set(lattice_raw):
            _fail("2D lattice must be {'lx': ..., 'ly': ...}")
        sizes = (int(lattice_raw["lx"]), int(lattice_raw["ly"]))
    if any(s < 2 for s in sizes):
        _fail(f"lattice sizes must be >= 2, got {sizes}")

    params_raw = raw.get("params", {})
    mass = params_raw.get("mass")
    if mass is None or not 0.0 <= float(mass) <= 1.0:
        _fail(f"params.mass must lie in [0, 1], got {mass!r}")
    chi = _complex_from_json(params_raw.get("chi", 1.0))
    if abs(abs(chi) - 1.0) > 1e-9:
        _fail(f"params.chi must have unit modulus, got {chi!r}")

    steps = raw.get("steps")
    if not isinstance(steps, int) or steps < 0:
        _fail(f"steps must be a nonnegative integer, got {steps!r}")

    state_raw = raw.get("initial_state")
    if not isinstance(state_raw, dict) or "kind" not in state_raw:
        _fail("initial_state must be a mapping with a 'kind'")
    kind = state_raw["kind"]
    if kind not in ("vacuum", "delta", "gaussian"):
        _fail(f"initial_state.kind must be vacuum|delta|gaussian, got {kind!r}")

    def _tuple(name, default=()):
        value = state_raw.get(name, None)
        if value is None:
            return tuple(default)
        if np.ndim(value) == 0:
            value = [value]
        return tuple(float(v) for v in value)

    center = _tuple("center")
    width = _tuple("width")
    momentum = _tuple("momentum")
    band = int(state_raw.get("band", 1))
    if band not in (-1, 1):
        _fail(f"initial_state.band must be +1 or -1, got {band}")
    polarization = None
    if state_raw.get("polarization") is not None:
        polarization = tuple(_complex_from_json(v) for v in state_raw["polarization"])

    n_comp = 2 if dimension == 1 else 4
    if kind in ("delta", "gaussian"):
        if len(center) != dimension:
            _fail(f"initial_state.center must have {dimension} entries, got {center}")
        if polarization is not None and len(polarization) != n_comp:
            _fail(f"polarization must have {n_comp} components, got {len(polarization)}")
    if kind == "gaussian":
        if len(width) != dimension or any(w <= 0 for w in width):
            _fail(f"initial_state.width must be {dimension} positive entries, got {width}")
        if len(momentum) != dimension:
            _fail(f"initial_state.momentum must have {dimension} entries, got {momentum}")
        if any(abs(k) > np.pi + 1e-12 for k in momentum):
            _fail(f"momentum components must lie in [-pi, pi], got {momentum}")
    if kind == "delta" and polarization is None:
        polarization = tuple([1.0 + 0.0j] + [0.0j] * (n_comp - 1))

    engine = raw.get("engine", "stencil")
    if engine not in ("stencil", "spectral"):
        _fail(f"engine must be stencil|spectral, got {engine!r}")

    probability = raw.get("observables", {}).get("probability", "total")
    if probability not in ("total", "per_component"):
        _fail(f"observables.probability must be total|per_component, got {probability!r}")

    units_profile = raw.get("units_profile", "codata2018")
    if isinstance(units_profile, dict):
        units_profile = PlanckUnits(
            units_profile["length_m"], units_profile["time_s"], units_profile["mass_kg"]
        )
    else:
        resolve_units(units_profile)  # name check only

    return ScenarioConfig(
        dimension=dimension,
        lattice=sizes,
        mass=float(mass),
        chi=chi,
        steps=steps,
        initial_state=InitialStateConfig(
            kind=kind,
            center=center,
            width=width,
            momentum=momentum,
            band=band,
            polarization=polarization,
        ),
        engine=engine,
        probability=probability,
        units_profile=units_profile,
        output_dir=raw.get("output_dir"),
    )


def config_to_dict(config: ScenarioConfig) -> Dict:
    """Canonical, lossless JSON-shaped echo of a config."""
    state = config.initial_state
    lattice = (
        {"length": config.lattice[0]}
        if config.dimension == 1
        else {"lx": config.lattice[0], "ly": config.lattice[1]}
    )
    units = config.units_profile
    if isinstance(units, PlanckUnits):
        units = {"length_m": units.length_m, "time_s": units.time_s, "mass_kg": units.mass_kg}
    return {
        "schema_version": CONFIG_SCHEMA_VERSION,
        "dimension": config.dimension,
        "lattice": lattice,
        "params": {"mass": config.mass, "chi": _complex_to_json(config.chi)},
        "steps": config.steps,
        "initial_state": {
            "kind": state.kind,
            "center": list(state.center),
            "width": list(state.width),
            "momentum": list(state.momentum),
            "band": state.band,
            "polarization": None
            if state.polarization is None
            else [_complex_to_json(p) for p in state.polarization],
        },
        "engine": config.engine,
        "observables": {"probability": config.probability},
        "units_profile": units,
        "output_dir": config.output_dir,
    }


def support_width(state: InitialStateConfig, axis: int) -> Optional[int]:
    """Numerically relevant initial support extent along one axis."""
    if state.kind == "vacuum":
        return None
    if state.kind == "delta":
        return 1
    return 2 * int(np.ceil(lat.SUPPORT_RADII * state.width[axis])) + 1


def validate_no_wrap(config: ScenarioConfig) -> None:
    """Refuse configurations whose causal cone could cross the seam."""
    for axis, length in enumerate(config.lattice):
        width = support_width(config.initial_state, axis)
        if width is None:
            continue
        needed = 2 * config.steps + width
        if length <= needed:
            _fail(
                f"no-wrap violation on axis {axis}: lattice size {length} must exceed "
                f"2*steps + support = {needed}"
            )


# ---------------------------------------------------------------------------
# Execution


@dataclass
class RunRecord:
    """Everything a run produced, config echo included."""

    config: Dict
    norm_trace: np.ndarray  # (steps + 1,)
    peak_trajectory: np.ndarray  # (steps + 1, dimension), int sites
    final_probability: np.ndarray  # per-site total
    final_components: np.ndarray  # (n_comp, ...) per-site per-component
    timings: Dict[str, float] = field(default_factory=dict)
    format_version: int = SIDECAR_FORMAT_VERSION


def build_initial_field(config: ScenarioConfig):
    """Materialize lattice, params, and the configured initial state."""
    state = config.initial_state
    if config.dimension == 1:
        lattice = lat.Lattice1D(config.lattice[0])
        params = dirac1d.AutomatonParams1D(config.mass)
    else:
        lattice = lat.Lattice2D(*config.lattice)
        params = dirac2d.AutomatonParams2D(config.mass, config.chi)

    if state.kind == "vacuum":
        return lattice, params, lat.vacuum(lattice)

    if state.kind == "delta":
        site = int(state.center[0]) if config.dimension == 1 else tuple(int(c) for c in state.center)
        return lattice, params, lat.delta_state(lattice, site, np.asarray(state.polarization))

    if state.polarization is not None:
        pol = np.asarray(state.polarization, dtype=np.complex128)
    elif config.dimension == 1:
        pol = dirac1d.band_eigenvector_1d(state.momentum[0], params, state.band)
    else:
        pol = dirac2d.band_eigenvector_2d(state.momentum[0], state.momentum[1], params, state.band)
    spec = lat.WavepacketSpec(
        center=state.center,
        width=state.width,
        momentum=state.momentum,
        band=state.band,
        polarization=pol,
    )
    return lattice, params, lat.gaussian_packet(lattice, spec)


def _argmax_site(prob: np.ndarray) -> Tuple[int, ...]:
    # np.argmax scans in C order, which is exactly lexicographic site
    # order, the documented tie-break.
    flat = int(np.argmax(prob))
    return tuple(int(i) for i in np.unravel_index(flat, prob.shape))


def track_packet_peak(probability_maps: Sequence[np.ndarray]) -> np.ndarray:
    """Argmax site per recorded map; ties break lexicographically."""
    return np.array([_argmax_site(p) for p in probability_maps], dtype=np.int64)


def run(config: ScenarioConfig, write_outputs: bool = True) -> RunRecord:
    """Validate, evolve, record; optionally write the output files."""
    validate_no_wrap(config)
    t_setup = time.perf_counter()
    lattice, params, psi = build_initial_field(config)

    if config.dimension == 1:
        stencil = lambda f: dirac1d.step_1d(f, params)
        spectral = lambda f: dirac1d.step_1d_spectral(f, params, 1)
    else:
        stencil = lambda f: dirac2d.step_2d(f, params)
        spectral = lambda f: dirac2d.step_2d_spectral(f, params, 1)
    advance = stencil if config.engine == "stencil" else spectral

    norms = [lat.norm(psi) ** 2]
    peaks = [_argmax_site(lat.probability_map(psi))]
    t_evolve = time.perf_counter()
    for _ in range(config.steps):
        psi = advance(psi)
        prob = lat.probability_map(psi)
        norms.append(float(prob.sum()))
        peaks.append(_argmax_site(prob))
    t_done = time.perf_counter()

    record = RunRecord(
        config=config_to_dict(config),
        norm_trace=np.asarray(norms),
        peak_trajectory=np.asarray(peaks, dtype=np.int64),
        final_probability=lat.probability_map(psi),
        final_components=lat.probability_map(psi, per_component=True),
        timings={
            "setup_s": t_evolve - t_setup,
            "evolve_s": t_done - t_evolve,
        },
    )
    outdir = config.output_dir or os.environ.get(OUTPUT_DIR_ENV)
    if write_outputs and outdir:
        write_run_outputs(record, outdir)
    return record


# ---------------------------------------------------------------------------
# Output files


def _atomic_write_bytes(path: str, data: bytes) -> None:
    directory = os.path.dirname(path) or "."
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _atomic_write_text(path: str, text: str) -> None:
    _atomic_write_bytes(path, text.encode("utf-8"))


def _csv_text(header: str, rows: np.ndarray) -> str:
    lines = [header]
    for row in np.atleast_2d(rows):
        lines.append(",".join(_format_number(v) for v in row))
    return "\n".join(lines) + "\n"


def _format_number(value) -> str:
    if float(value).is_integer() and abs(value) < 1e15:
        return str(int(value))
    return format(float(value), ".17g")


def _grid_entry(name: str, arr: np.ndarray) -> Dict:
    return {
        "file": f"{name}.bin",
        "dtype": "<f8",
        "shape": list(arr.shape),
        "order": "row-major",
        "sum": float(arr.sum()),
    }


def write_run_outputs(record: RunRecord, outdir: str) -> Dict[str, str]:
    """Write sidecar plus payloads; returns {logical name: path}."""
    os.makedirs(outdir, exist_ok=True)
    paths: Dict[str, str] = {}
    grids: Dict[str, Dict] = {}
    tables: Dict[str, str] = {}

    steps = np.arange(record.norm_trace.shape[0])
    norm_rows = np.column_stack([steps, record.norm_trace])
    tables["norm_trace"] = "norm_trace.csv"
    paths["norm_trace"] = os.path.join(outdir, "norm_trace.csv")
    _atomic_write_text(paths["norm_trace"], _csv_text("step,norm", norm_rows))

    dim = record.peak_trajectory.shape[1]
    peak_header = "step,x" if dim == 1 else "step,x,y"
    peak_rows = np.column_stack([steps, record.peak_trajectory])
    tables["peak_trajectory"] = "peak_trajectory.csv"
    paths["peak_trajectory"] = os.path.join(outdir, "peak_trajectory.csv")
    _atomic_write_text(paths["peak_trajectory"], _csv_text(peak_header, peak_rows))

    if dim == 1:
        comps = record.final_components
        sites = np.arange(comps.shape[1])
        rows = np.column_stack([sites, comps[0], comps[1], record.final_probability])
        tables["probability_map"] = "probability_map.csv"
        paths["probability_map"] = os.path.join(outdir, "probability_map.csv")
        _atomic_write_text(
            paths["probability_map"], _csv_text("site,p_up,p_down,p_total", rows)
        )
    else:
        spin_up = record.final_components[list(dirac2d.SPIN_UP_COMPONENTS)].sum(axis=0)
        for name, arr in (
            ("probability_total", record.final_probability),
            ("probability_spin_up", spin_up),
        ):
            grids[name] = _grid_entry(name, arr)
            paths[name] = os.path.join(outdir, grids[name]["file"])
            _atomic_write_bytes(paths[name], np.ascontiguousarray(arr, dtype="<f8").tobytes())

    sidecar = {
        "format_version": record.format_version,
        "kind": "run",
        "config": record.config,
        "dimension": dim,
        "grids": grids,
        "tables": tables,
        "norm_initial": float(record.norm_trace[0]),
        "norm_final": float(record.norm_trace[-1]),
        "timings": record.timings,
        "created_at": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
    }
    paths["sidecar"] = os.path.join(outdir, "sidecar.json")
    _atomic_write_text(paths["sidecar"], json.dumps(sidecar, indent=2, sort_keys=True) + "\n")
    return paths


def export_group_velocity_surface(
    params: dirac2d.AutomatonParams2D, resolution: int, outdir: str
) -> Dict[str, str]:
    """Write the group-velocity surface grids plus sidecar."""
    surface = dirac2d.group_velocity_field(params, resolution)
    os.makedirs(outdir, exist_ok=True)
    paths: Dict[str, str] = {}
    grids: Dict[str, Dict] = {}
    for name, arr in (("vx", surface.vx), ("vy", surface.vy), ("vmag", surface.magnitude)):
        grids[name] = _grid_entry(name, arr)
        paths[name] = os.path.join(outdir, grids[name]["file"])
        _atomic_write_bytes(paths[name], np.ascontiguousarray(arr, dtype="<f8").tobytes())
    sidecar = {
        "format_version": SIDECAR_FORMAT_VERSION,
        "kind": "group_velocity_surface",
        "params": {"mass": params.mass, "chi": _complex_to_json(params.chi)},
        "momentum_axis": {"start": -np.pi, "step": 2.0 * np.pi / resolution, "count": resolution},
        "grids": grids,
        "max_magnitude": float(surface.magnitude.max()),
        "created_at": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
    }
    paths["sidecar"] = os.path.join(outdir, "sidecar.json")
    _atomic_write_text(paths["sidecar"], json.dumps(sidecar, indent=2, sort_keys=True) + "\n")
    return paths


def export_dispersion(
    dimension: int,
    mass: float,
    chi: complex,
    resolution: int,
    outdir: str,
) -> Dict[str, str]:
    """Write dispersion samples: CSV in 1D, grids in 2D."""
    os.makedirs(outdir, exist_ok=True)
    paths: Dict[str, str] = {}
    if dimension == 1:
        params = dirac1d.AutomatonParams1D(mass)
        k = -np.pi + 2.0 * np.pi * np.arange(resolution) / resolution
        rows = np.column_stack(
            [k, dirac1d.dispersion_1d(k, params), dirac1d.group_velocity_1d(k, params)]
        )
        paths["dispersion"] = os.path.join(outdir, "dispersion.csv")
        _atomic_write_text(paths["dispersion"], _csv_text("k,omega,group_velocity", rows))
        sidecar = {
            "format_version": SIDECAR_FORMAT_VERSION,
            "kind": "dispersion",
            "dimension": 1,
            "params": {"mass": mass},
            "tables": {"dispersion": "dispersion.csv"},
            "created_at": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
        }
    else:
        params = dirac2d.AutomatonParams2D(mass, chi)
        k = -np.pi + 2.0 * np.pi * np.arange(resolution) / resolution
        eigenphase = dirac2d.eigenphase_2d(k[:, None], k[None, :], params)
        arcsin_form = dirac2d.dispersion_2d(k[:, None], k[None, :], params)
        grids = {}
        for name, arr in (("omega_eigenphase", eigenphase), ("omega_arcsin", arcsin_form)):
            grids[name] = _grid_entry(name, arr)
            paths[name] = os.path.join(outdir, grids[name]["file"])
            _atomic_write_bytes(paths[name], np.ascontiguousarray(arr, dtype="<f8").tobytes())
        sidecar = {
            "format_version": SIDECAR_FORMAT_VERSION,
            "kind": "dispersion",
            "dimension": 2,
            "params": {"mass": mass, "chi": _complex_to_json(chi)},
            "momentum_axis": {"start": -np.pi, "step": 2.0 * np.pi / resolution, "count": resolution},
            "grids": grids,
            "created_at": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
        }
    paths["sidecar"] = os.path.join(outdir, "sidecar.json")
    _atomic_write_text(paths["sidecar"], json.dumps(sidecar, indent=2, sort_keys=True) + "\n")
    return paths


# ---------------------------------------------------------------------------
# Figure presets
#
# The published captions fix T = 45 and the Gaussian width 2, but leave
# mass, carrier momenta, and polarizations open; the values below are
# documented reconstructions.  chi = 1 throughout.

_PRESET_L = 160
_PRESET_CENTER = _PRESET_L // 2
# Symmetric single-cell spinor (1, i, 0, 0)/sqrt(2): makes the zero-momentum
# maps exactly invariant under inversion through the center and under the
# diagonal transpose (see tests).
_SYMMETRIC_POL = [[0.7071067811865476, 0.0], [0.0, 0.7071067811865476], [0.0, 0.0], [0.0, 0.0]]


def _preset_2d(momentum, kind="gaussian", polarization=None) -> Dict:
    state: Dict = {"kind": kind, "center": [_PRESET_CENTER, _PRESET_CENTER], "band": 1}
    if kind == "gaussian":
        state["width"] = [2, 2]
        state["momentum"] = list(momentum)
    state["polarization"] = polarization
    return {
        "schema_version": CONFIG_SCHEMA_VERSION,
        "dimension": 2,
        "lattice": {"lx": _PRESET_L, "ly": _PRESET_L},
        "params": {"mass": 0.1, "chi": [1.0, 0.0]},
        "steps": 45,
        "initial_state": state,
        "engine": "stencil",
        "observables": {"probability": "per_component"},
        "units_profile": "codata2018",
        "output_dir": None,
    }


PRESETS: Dict[str, Dict] = {
    # High relativistic carrier momentum along x.
    "fig2a": _preset_2d([np.pi / 4, 0.0]),
    # Brillouin-zone border: the packet stalls.
    "fig2b": _preset_2d([np.pi, 0.0]),
    # Zero momentum, symmetric spinor.
    "fig2c": _preset_2d([0.0, 0.0], polarization=_SYMMETRIC_POL),
    # Single-cell state, symmetric spinor.
    "fig2d": _preset_2d(None, kind="delta", polarization=_SYMMETRIC_POL),
}


def preset_config(name: str) -> Dict:
    try:
        return json.loads(json.dumps(PRESETS[name]))
    except KeyError:
        raise ScenarioError(
            "validation", f"unknown preset {name!r}; known: {sorted(PRESETS)}"
        ) from None
