import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from dirac_qca import lattice as lat


def random_field(lattice, seed=0):
    rng = np.random.default_rng(seed)
    shape = (2 if isinstance(lattice, lat.Lattice1D) else 4,) + lattice.shape
    f = rng.normal(size=shape) + 1j * rng.normal(size=shape)
    return lat.normalize(f)


class TestLattices:
    def test_rejects_tiny_lattices(self):
        with pytest.raises(ValueError):
            lat.Lattice1D(1)
        with pytest.raises(ValueError):
            lat.Lattice2D(4, 1)

    def test_momentum_grid_covers_the_zone(self):
        for L in (5, 8, 13):
            k = lat.Lattice1D(L).momentum_grid()
            expected = sorted(2 * np.pi * j / L for j in range(-(L // 2), (L + 1) // 2))
            assert_allclose(sorted(k), expected, atol=1e-15)
            assert np.all(k >= -np.pi) and np.all(k < np.pi)


class TestConstructors:
    def test_vacuum_is_zero(self):
        field = lat.vacuum(lat.Lattice1D(8))
        assert field.shape == (2, 8)
        assert np.all(field == 0)
        assert lat.norm(field) == 0.0

    def test_delta_state(self):
        field = lat.delta_state(lat.Lattice1D(8), 3, [1.0, 0.0])
        assert field[0, 3] == 1.0
        assert np.count_nonzero(field) == 1
        assert lat.norm(field) == pytest.approx(1.0, abs=1e-15)

    def test_delta_state_out_of_range(self):
        with pytest.raises(ValueError):
            lat.delta_state(lat.Lattice1D(8), 8, [1.0, 0.0])
        with pytest.raises(ValueError):
            lat.delta_state(lat.Lattice2D(4, 4), (0, 7), [1, 0, 0, 0])

    def test_delta_superposition_norm(self):
        lattice = lat.Lattice1D(8)
        a = lat.delta_state(lattice, 3, [1.0, 0.0])
        b = lat.delta_state(lattice, 5, [0.0, 1.0])
        combo = lat.normalize(a + b)
        assert lat.norm(combo) == pytest.approx(1.0, abs=1e-12)

    def test_non_unit_spinor_rejected(self):
        with pytest.raises(ValueError):
            lat.delta_state(lat.Lattice1D(8), 0, [1.0, 1.0])

    def test_constructors_are_deterministic(self):
        lattice = lat.Lattice2D(64, 64)
        spec = lat.WavepacketSpec(
            center=(32.0, 32.0),
            width=(2.0, 2.0),
            momentum=(0.5, -0.25),
            polarization=np.array([0.5, 0.5j, -0.5, 0.5]),
        )
        a = lat.gaussian_packet(lattice, spec)
        b = lat.gaussian_packet(lattice, spec)
        assert np.array_equal(a, b)


class TestGaussianPacket:
    def test_matches_direct_formula(self):
        # Oracle: literal per-site evaluation of the defining formula.
        L, x0, width, k0 = 64, 32.0, 2.0, 0.7853981633974483
        pol = np.array([0.6, 0.8j])
        lattice = lat.Lattice1D(L)
        spec = lat.WavepacketSpec(center=(x0,), width=(width,), momentum=(k0,), polarization=pol)
        field = lat.gaussian_packet(lattice, spec)
        raw = np.zeros((2, L), dtype=complex)
        for x in range(L):
            dx = (x - x0 + L / 2) % L - L / 2
            raw[:, x] = np.exp(-dx * dx / (4 * width * width)) * np.exp(1j * k0 * x) * pol
        raw /= np.sqrt(np.sum(np.abs(raw) ** 2))
        assert_allclose(field, raw, atol=1e-14)

    def test_zero_momentum_packet_is_real_positive(self):
        lattice = lat.Lattice1D(64)
        spec = lat.WavepacketSpec(
            center=(32.0,), width=(2.0,), momentum=(0.0,), polarization=np.array([1.0, 0.0])
        )
        field = lat.gaussian_packet(lattice, spec)
        assert lat.norm(field) == pytest.approx(1.0, abs=1e-12)
        assert np.all(field.imag == 0)
        assert np.all(field[0].real > 0)

    def test_probability_profile_decays_monotonically(self):
        lattice = lat.Lattice1D(64)
        spec = lat.WavepacketSpec(
            center=(32.0,), width=(2.0,), momentum=(0.0,), polarization=np.array([1.0, 0.0])
        )
        prob = lat.probability_map(lat.gaussian_packet(lattice, spec))
        for x in range(32, 32 + 6):  # out to 3 widths
            assert prob[x + 1] < prob[x]

    def test_global_phase_of_polarization_is_irrelevant(self):
        lattice = lat.Lattice1D(64)
        base = dict(center=(20.0,), width=(3.0,), momentum=(1.0,))
        a = lat.gaussian_packet(
            lattice, lat.WavepacketSpec(**base, polarization=np.array([0.6, 0.8]))
        )
        b = lat.gaussian_packet(
            lattice,
            lat.WavepacketSpec(**base, polarization=np.exp(0.37j) * np.array([0.6, 0.8])),
        )
        assert_allclose(lat.probability_map(a), lat.probability_map(b), atol=1e-15)

    def test_seam_leakage_rejected(self):
        lattice = lat.Lattice1D(32)
        spec = lat.WavepacketSpec(
            center=(16.0,), width=(8.0,), momentum=(0.0,), polarization=np.array([1.0, 0.0])
        )
        with pytest.raises(ValueError, match="seam"):
            lat.gaussian_packet(lattice, spec)

    def test_uniform_limit_is_a_plane_wave(self):
        # The infinite-width limit of the envelope is the plane wave
        # constructor; its probability map is exactly flat.
        lattice = lat.Lattice1D(32)
        field = lat.plane_wave(lattice, 2 * np.pi * 5 / 32, [1.0, 0.0])
        prob = lat.probability_map(field)
        assert_allclose(prob, prob[0], atol=1e-15)
        assert lat.norm(field) == pytest.approx(1.0, abs=1e-12)

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            lat.WavepacketSpec(center=(0.0,), width=(0.0,), momentum=(0.0,))
        with pytest.raises(ValueError):
            lat.WavepacketSpec(center=(0.0,), width=(1.0,), momentum=(4.0,))
        with pytest.raises(ValueError):
            lat.WavepacketSpec(center=(0.0,), width=(1.0,), momentum=(0.0,), band=2)


class TestDft:
    def test_matches_direct_sum(self):
        # Oracle: O(L^2) evaluation of psi_hat(k) = L^-1/2 sum_x e^{-ikx} psi(x).
        lattice = lat.Lattice1D(16)
        field = random_field(lattice, seed=3)
        k = lattice.momentum_grid()
        x = lattice.sites()
        direct = np.einsum("kx,cx->ck", np.exp(-1j * np.outer(k, x)), field) / np.sqrt(16)
        assert_allclose(lat.dft_forward(field), direct, atol=1e-13)

    def test_delta_has_flat_spectrum(self):
        field = lat.delta_state(lat.Lattice1D(16), 0, [1.0, 0.0])
        mags = np.abs(lat.dft_forward(field)[0])
        assert_allclose(mags, 1 / 4.0, atol=1e-14)

    def test_plane_wave_is_a_single_mode(self):
        L = 32
        k0 = 2 * np.pi * 7 / L
        field = lat.plane_wave(lat.Lattice1D(L), k0, [0.0, 1.0])
        hat = lat.dft_forward(field)
        assert abs(hat[1, 7]) == pytest.approx(1.0, abs=1e-12)
        hat[1, 7] = 0
        assert np.abs(hat).max() < 1e-12

    def test_round_trip_all_lengths(self):
        rng = np.random.default_rng(7)
        for L in range(2, 257):
            f = rng.normal(size=(2, L)) + 1j * rng.normal(size=(2, L))
            f = lat.normalize(f)
            back = lat.dft_inverse(lat.dft_forward(f))
            assert np.abs(back - f).max() < 1e-12
            assert abs(lat.norm(lat.dft_forward(f)) - 1.0) < 1e-12

    def test_2d_round_trip(self):
        lattice = lat.Lattice2D(12, 20)
        f = random_field(lattice, seed=5)
        assert np.abs(lat.dft_inverse(lat.dft_forward(f)) - f).max() < 1e-12

    @given(st.integers(2, 64), st.integers(0, 2**31 - 1))
    @settings(max_examples=40, deadline=None)
    def test_shift_phase_duality(self, L, seed):
        # Translating content one site toward +x multiplies mode k by e^{-ik}.
        lattice = lat.Lattice1D(L)
        field = random_field(lattice, seed=seed)
        shifted = np.roll(field, 1, axis=1)
        hat = lat.dft_forward(field)
        expected = np.exp(-1j * lattice.momentum_grid()) * hat
        assert np.abs(lat.dft_forward(shifted) - expected).max() < 1e-12


class TestProbabilityMap:
    def test_sums_to_norm(self):
        field = random_field(lat.Lattice2D(8, 8), seed=11)
        assert lat.probability_map(field).sum() == pytest.approx(1.0, abs=1e-12)

    def test_per_component_keeps_axis(self):
        field = random_field(lat.Lattice2D(8, 8), seed=11)
        per = lat.probability_map(field, per_component=True)
        assert per.shape == (4, 8, 8)
        assert_allclose(per.sum(axis=0), lat.probability_map(field), atol=1e-15)

    def test_delta_is_a_single_entry(self):
        prob = lat.probability_map(lat.delta_state(lat.Lattice1D(8), 2, [0.0, 1.0]))
        assert prob[2] == pytest.approx(1.0, abs=1e-15)
        assert np.count_nonzero(prob) == 1
