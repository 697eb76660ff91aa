import json
import os

import numpy as np
import pytest
from numpy.testing import assert_allclose

from dirac_qca import scenario
from dirac_qca import lattice as lat
from dirac_qca.dirac1d import AutomatonParams1D, group_velocity_1d
from dirac_qca.scenario import (
    ScenarioError,
    config_from_dict,
    config_to_dict,
    preset_config,
    run,
    track_packet_peak,
    validate_no_wrap,
)


def config_1d(**overrides):
    raw = {
        "schema_version": 1,
        "dimension": 1,
        "lattice": {"length": 256},
        "params": {"mass": 0.5},
        "steps": 10,
        "initial_state": {
            "kind": "gaussian",
            "center": [128],
            "width": [4],
            "momentum": [1.0],
            "band": 1,
        },
        "engine": "stencil",
    }
    raw.update(overrides)
    return raw


class TestConfigParsing:
    def test_round_trip_is_lossless(self):
        config = config_from_dict(config_1d())
        echoed = config_from_dict(config_to_dict(config))
        assert echoed == config

    def test_schema_version_required(self):
        with pytest.raises(ScenarioError, match="schema_version"):
            config_from_dict(config_1d(schema_version=2))

    def test_bad_dimension(self):
        with pytest.raises(ScenarioError, match="dimension"):
            config_from_dict(config_1d(dimension=3))

    def test_bad_mass(self):
        with pytest.raises(ScenarioError, match="mass"):
            config_from_dict(config_1d(params={"mass": 1.5}))

    def test_bad_engine(self):
        with pytest.raises(ScenarioError, match="engine"):
            config_from_dict(config_1d(engine="magic"))

    def test_bad_momentum(self):
        state = dict(config_1d()["initial_state"], momentum=[5.0])
        with pytest.raises(ScenarioError, match="momentum"):
            config_from_dict(config_1d(initial_state=state))

    def test_chi_accepts_pairs(self):
        config = config_from_dict(config_1d(params={"mass": 0.5, "chi": [0.0, 1.0]}))
        assert config.chi == 1.0j

    def test_error_category_is_machine_readable(self):
        try:
            config_from_dict(config_1d(steps=-1))
        except ScenarioError as exc:
            assert exc.category == "validation"
        else:
            pytest.fail("expected a validation error")


class TestNoWrapValidation:
    def test_accepts_safe_config(self):
        validate_no_wrap(config_from_dict(config_1d()))

    def test_rejects_unsafe_steps(self):
        config = config_from_dict(config_1d(steps=1000))
        with pytest.raises(ScenarioError, match="no-wrap"):
            validate_no_wrap(config)

    def test_vacuum_is_exempt(self):
        state = {"kind": "vacuum"}
        config = config_from_dict(config_1d(initial_state=state, steps=100000))
        validate_no_wrap(config)

    def test_delta_uses_unit_support(self):
        # L = 256, support 1: the cone fits for T = 127 (2*127+1 < 256)
        # but not for T = 128.
        state = {"kind": "delta", "center": [128]}
        validate_no_wrap(config_from_dict(config_1d(initial_state=state, steps=127)))
        config = config_from_dict(config_1d(initial_state=state, steps=128))
        with pytest.raises(ScenarioError):
            validate_no_wrap(config)


class TestRun:
    def test_vacuum_run_is_all_zero(self):
        state = {"kind": "vacuum"}
        record = run(config_from_dict(config_1d(initial_state=state, steps=100)), write_outputs=False)
        assert np.all(record.norm_trace == 0.0)
        assert np.all(record.final_probability == 0.0)

    def test_norm_trace_stays_at_one(self):
        record = run(config_from_dict(config_1d()), write_outputs=False)
        assert np.abs(record.norm_trace - 1.0).max() < 1e-10

    def test_engines_agree(self):
        a = run(config_from_dict(config_1d(engine="stencil")), write_outputs=False)
        b = run(config_from_dict(config_1d(engine="spectral")), write_outputs=False)
        assert np.abs(a.final_probability - b.final_probability).max() < 1e-10
        assert np.array_equal(a.peak_trajectory, b.peak_trajectory)

    def test_engines_agree_on_2d_preset(self):
        raw = preset_config("fig2a")
        raw["steps"] = 12
        records = {}
        for engine in ("stencil", "spectral"):
            raw["engine"] = engine
            records[engine] = run(config_from_dict(raw), write_outputs=False)
        delta = records["stencil"].final_probability - records["spectral"].final_probability
        assert np.abs(delta).max() < 1e-10

    def test_massless_peak_moves_one_site_per_step(self):
        state = {
            "kind": "gaussian",
            "center": [128],
            "width": [4],
            "momentum": [1.0],
            "polarization": [[1.0, 0.0], [0.0, 0.0]],
        }
        record = run(
            config_from_dict(config_1d(initial_state=state, params={"mass": 0.0}, steps=20)),
            write_outputs=False,
        )
        # pure up mover: exactly one site toward -x each step
        diffs = np.diff(record.peak_trajectory[:, 0])
        assert np.all(diffs == -1)

    def test_fitted_peak_speed_matches_group_velocity(self):
        state = {
            "kind": "gaussian",
            "center": [256],
            "width": [8],
            "momentum": [np.pi / 2],
            "band": 1,
        }
        raw = config_1d(initial_state=state, params={"mass": 0.6}, steps=60, lattice={"length": 512})
        record = run(config_from_dict(raw), write_outputs=False)
        t = np.arange(record.peak_trajectory.shape[0])
        slope = np.polyfit(t, record.peak_trajectory[:, 0].astype(float), 1)[0]
        expected = group_velocity_1d(np.pi / 2, AutomatonParams1D(0.6))
        assert abs(abs(slope) - expected) < 0.05

    def test_stationary_planck_mass_trajectory(self):
        state = {"kind": "delta", "center": [128]}
        record = run(
            config_from_dict(config_1d(initial_state=state, params={"mass": 1.0}, steps=50)),
            write_outputs=False,
        )
        assert np.all(record.peak_trajectory[:, 0] == 128)


class TestTrackPacketPeak:
    def test_lexicographic_tie_break(self):
        flat = np.zeros((4, 4))
        flat[1, 2] = flat[2, 1] = 1.0
        assert tuple(track_packet_peak([flat])[0]) == (1, 2)


class TestOutputs:
    def test_payloads_byte_identical_across_reruns(self, tmp_path):
        raw = config_1d(output_dir=str(tmp_path / "a"))
        run(config_from_dict(raw))
        raw["output_dir"] = str(tmp_path / "b")
        run(config_from_dict(raw))
        for name in ("probability_map.csv", "norm_trace.csv", "peak_trajectory.csv"):
            a = (tmp_path / "a" / name).read_bytes()
            b = (tmp_path / "b" / name).read_bytes()
            assert a == b

    def test_sidecar_echo_reproduces_outputs(self, tmp_path):
        raw = config_1d(output_dir=str(tmp_path / "a"))
        run(config_from_dict(raw))
        sidecar = json.loads((tmp_path / "a" / "sidecar.json").read_text())
        echoed = dict(sidecar["config"], output_dir=str(tmp_path / "b"))
        run(config_from_dict(echoed))
        assert (tmp_path / "a" / "probability_map.csv").read_bytes() == (
            tmp_path / "b" / "probability_map.csv"
        ).read_bytes()

    def test_2d_outputs_and_sums(self, tmp_path):
        raw = preset_config("fig2d")
        raw["steps"] = 10
        raw["output_dir"] = str(tmp_path)
        record = run(config_from_dict(raw))
        sidecar = json.loads((tmp_path / "sidecar.json").read_text())
        assert sidecar["format_version"] == 1
        for name in ("probability_total", "probability_spin_up"):
            entry = sidecar["grids"][name]
            data = np.fromfile(tmp_path / entry["file"], dtype="<f8").reshape(entry["shape"])
            assert data.sum() == pytest.approx(entry["sum"], abs=1e-12)
        total = np.fromfile(tmp_path / "probability_total.bin", dtype="<f8")
        assert total.sum() == pytest.approx(1.0, abs=1e-10)
        assert_allclose(
            np.fromfile(tmp_path / "probability_total.bin", dtype="<f8").reshape(160, 160),
            record.final_probability,
        )

    def test_norm_trace_csv_shape(self, tmp_path):
        raw = config_1d(output_dir=str(tmp_path))
        run(config_from_dict(raw))
        lines = (tmp_path / "norm_trace.csv").read_text().strip().splitlines()
        assert lines[0] == "step,norm"
        assert len(lines) == 12  # header + steps + 1

    def test_environment_variable_output_dir(self, tmp_path, monkeypatch):
        monkeypatch.setenv(scenario.OUTPUT_DIR_ENV, str(tmp_path))
        run(config_from_dict(config_1d()))
        assert (tmp_path / "sidecar.json").exists()


class TestExports:
    def test_group_velocity_surface(self, tmp_path):
        from dirac_qca.dirac2d import AutomatonParams2D

        paths = scenario.export_group_velocity_surface(AutomatonParams2D(0.0), 64, str(tmp_path))
        sidecar = json.loads((tmp_path / "sidecar.json").read_text())
        mag = np.fromfile(paths["vmag"], dtype="<f8").reshape(64, 64)
        assert mag.max() <= 1.0 + 1e-12
        assert sidecar["max_magnitude"] == pytest.approx(mag.max())
        # zone-edge midpoints are in the sample grid: k = -pi at index 0
        assert mag[0, 32] < 1e-12 and mag[32, 0] < 1e-12

    def test_planck_mass_surface_is_zero(self, tmp_path):
        from dirac_qca.dirac2d import AutomatonParams2D

        paths = scenario.export_group_velocity_surface(AutomatonParams2D(1.0), 32, str(tmp_path))
        assert np.fromfile(paths["vmag"], dtype="<f8").max() == 0.0

    def test_dispersion_export_1d(self, tmp_path):
        scenario.export_dispersion(1, 0.5, 1.0, 64, str(tmp_path))
        rows = np.loadtxt(tmp_path / "dispersion.csv", delimiter=",", skiprows=1)
        assert rows.shape == (64, 3)
        assert np.all(rows[:, 1] >= 0)

    def test_dispersion_export_2d_offset_relation(self, tmp_path):
        scenario.export_dispersion(2, 0.3, 1.0, 32, str(tmp_path))
        sidecar = json.loads((tmp_path / "sidecar.json").read_text())
        eig = np.fromfile(
            tmp_path / sidecar["grids"]["omega_eigenphase"]["file"], dtype="<f8"
        )
        arc = np.fromfile(tmp_path / sidecar["grids"]["omega_arcsin"]["file"], dtype="<f8")
        assert np.abs(eig + arc - np.pi / 2).max() < 1e-12


class TestPresets:
    def test_all_presets_validate(self):
        for name in ("fig2a", "fig2b", "fig2c", "fig2d"):
            config = config_from_dict(preset_config(name))
            validate_no_wrap(config)

    def test_unknown_preset(self):
        with pytest.raises(ScenarioError):
            preset_config("fig9z")

    def test_presets_are_copies(self):
        a = preset_config("fig2a")
        a["steps"] = 1
        assert preset_config("fig2a")["steps"] == 45
