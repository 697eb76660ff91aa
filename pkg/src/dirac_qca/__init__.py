"""Single-particle Dirac quantum cellular automaton in one and two dimensions."""

from .lattice import (
    Lattice1D,
    Lattice2D,
    WavepacketSpec,
    delta_state,
    dft_forward,
    dft_inverse,
    gaussian_packet,
    norm,
    normalize,
    plane_wave,
    probability_map,
    vacuum,
)
from .dirac1d import (
    AutomatonParams1D,
    MomentumKernel1D,
    band_eigenvector_1d,
    band_weights,
    build_kernel_1d,
    dispersion_1d,
    group_velocity_1d,
    kernel_matrix_1d,
    step_1d,
    step_1d_spectral,
)
from .dirac2d import (
    AutomatonParams2D,
    MomentumKernel2D,
    band_eigenvector_2d,
    build_kernel_2d,
    dispersion_2d,
    eigenphase_2d,
    group_velocity_2d,
    group_velocity_field,
    kernel_matrix_2d,
    spin_component_probability,
    step_2d,
    step_2d_spectral,
)
from .asymptotics import (
    DriftDiffusionParams,
    band_expansion_params,
    compare_to_automaton,
    diffusion_coefficient,
    drift_coefficient,
    evolve_drift_diffusion,
)
from .planck import (
    PROFILES,
    PlanckUnits,
    derive_constants,
    kg_to_adimensional,
    mass_to_kg,
    max_energy,
    max_momentum,
    resolve_units,
)
from .scenario import (
    PRESETS,
    RunRecord,
    ScenarioConfig,
    ScenarioError,
    config_from_dict,
    config_to_dict,
    export_dispersion,
    export_group_velocity_surface,
    preset_config,
    run,
    track_packet_peak,
)

__version__ = "0.1.0"
