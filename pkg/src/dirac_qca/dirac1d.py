"""One-dimensional Dirac automaton.

One step multiplies the two-component field, mode by mode, by

    U(k) = [[n e^{ik},  i m ],
            [  i m ,  n e^{-ik}]],      n = sqrt(1 - m^2),

which in position space is the stencil

    up'(x)   = n * up(x+1)   + i m * down(x)
    down'(x) = i m * up(x)   + n * down(x-1)

(the shift S maps psi(x) -> psi(x+1), i.e. content moves toward -x, and
S -> e^{+ik} under the package Fourier convention).

The dispersion is the nonnegative eigenphase branch

    omega(k) = arccos(n cos k)  in [0, pi],

with kernel eigenvalues e^{+i omega} and e^{-i omega}.  Band ``s`` in
this package labels the eigenvalue ``e^{-i s omega(k)}``; a narrowband
packet prepared on band ``s`` at carrier ``k0`` transports with velocity
``s * group_velocity_1d(k0)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from . import lattice as lat

# Below this, sin(omega) is treated as exactly degenerate (kernel = +-I).
_DEGENERATE_EPS = 1e-12


@dataclass(frozen=True)
class AutomatonParams1D:
    """Adimensional mass ``m`` in [0, 1]; ``n = sqrt(1 - m^2)`` derived."""

    mass: float

    def __post_init__(self) -> None:
        m = float(self.mass)
        if not np.isfinite(m) or not 0.0 <= m <= 1.0:
            raise ValueError(f"mass must lie in [0, 1], got {self.mass!r}")
        object.__setattr__(self, "mass", m)

    @property
    def n(self) -> float:
        """Off-diagonal shift weight sqrt(1 - m^2)."""
        return float(np.sqrt(1.0 - self.mass * self.mass))


def kernel_matrix_1d(k, params: AutomatonParams1D) -> np.ndarray:
    """U(k) as an array of 2x2 matrices; ``k`` may be any array shape."""
    k = np.asarray(k, dtype=float)
    m, n = params.mass, params.n
    u = np.zeros(k.shape + (2, 2), dtype=np.complex128)
    u[..., 0, 0] = n * np.exp(1j * k)
    u[..., 0, 1] = 1j * m
    u[..., 1, 0] = 1j * m
    u[..., 1, 1] = n * np.exp(-1j * k)
    return u


@dataclass(frozen=True)
class MomentumKernel1D:
    """Per-mode unitary ``k -> U(k)`` of the one-dimensional automaton."""

    params: AutomatonParams1D

    def __call__(self, k) -> np.ndarray:
        return kernel_matrix_1d(k, self.params)


def build_kernel_1d(params: AutomatonParams1D) -> MomentumKernel1D:
    return MomentumKernel1D(params)


def step_1d(field: np.ndarray, params: AutomatonParams1D) -> np.ndarray:
    """One position-space step; norm-preserving, support grows by <= 1 site."""
    m, n = params.mass, params.n
    up, down = field[0], field[1]
    out = np.empty_like(field)
    out[0] = n * np.roll(up, -1) + 1j * m * down
    out[1] = 1j * m * up + n * np.roll(down, 1)
    return out


def _chebyshev_power_apply(
    psi_hat: np.ndarray, u_psi_hat: np.ndarray, cos_w: np.ndarray, steps: int
) -> np.ndarray:
    """Apply U^T given U psi_hat, using U^2 = 2 cos(w) U - I.

    ``U^T = cos(T w) I + sin(T w)/sin(w) * (U - cos(w) I)``; at the
    degenerate modes (sin w = 0, where U = +-I exactly) the ratio limit
    ``T cos((T-1) w)`` is used.
    """
    w = np.arccos(np.clip(cos_w, -1.0, 1.0))
    sin_w = np.sin(w)
    safe = np.where(sin_w > _DEGENERATE_EPS, sin_w, 1.0)
    ratio = np.where(
        sin_w > _DEGENERATE_EPS,
        np.sin(steps * w) / safe,
        steps * np.cos((steps - 1) * w),
    )
    return np.cos(steps * w) * psi_hat + ratio * (u_psi_hat - cos_w * psi_hat)


def apply_kernel_1d(psi_hat: np.ndarray, k: np.ndarray, params: AutomatonParams1D) -> np.ndarray:
    """Mode-wise U(k) psi_hat without materializing 2x2 matrices."""
    m, n = params.mass, params.n
    out = np.empty_like(psi_hat)
    out[0] = n * np.exp(1j * k) * psi_hat[0] + 1j * m * psi_hat[1]
    out[1] = 1j * m * psi_hat[0] + n * np.exp(-1j * k) * psi_hat[1]
    return out


def step_1d_spectral(field: np.ndarray, params: AutomatonParams1D, steps: int) -> np.ndarray:
    """Exact ``steps``-fold evolution via per-mode kernel powers."""
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    if steps == 0:
        return field.copy()
    length = field.shape[1]
    k = 2.0 * np.pi * np.fft.fftfreq(length)
    psi_hat = lat.dft_forward(field)
    cos_w = params.n * np.cos(k)
    u_psi_hat = apply_kernel_1d(psi_hat, k, params)
    psi_hat = _chebyshev_power_apply(psi_hat, u_psi_hat, cos_w, steps)
    return lat.dft_inverse(psi_hat)


def dispersion_1d(k, params: AutomatonParams1D):
    """Nonnegative eigenphase branch arccos(n cos k), in [0, pi]."""
    k = np.asarray(k, dtype=float)
    w = np.arccos(np.clip(params.n * np.cos(k), -1.0, 1.0))
    return float(w) if w.ndim == 0 else w


def group_velocity_1d(k, params: AutomatonParams1D):
    """d omega / d k = n sin k / sqrt(sin^2 k + m^2 cos^2 k); |v| <= 1.

    At the massless dispersion kinks (m = 0, k in {0, +-pi}) the
    derivative is undefined; 0 is returned there.
    """
    k = np.asarray(k, dtype=float)
    m, n = params.mass, params.n
    s, c = np.sin(k), np.cos(k)
    den = np.sqrt(s * s + m * m * c * c)
    v = np.where(den > 0.0, n * s / np.where(den > 0.0, den, 1.0), 0.0)
    return float(v) if v.ndim == 0 else v


def band_eigenvector_1d(k: float, params: AutomatonParams1D, band: int = 1) -> np.ndarray:
    """Unit eigenvector of U(k) with eigenvalue ``e^{-i band omega(k)}``.

    At m = 0 the bands are the bare chiral movers; at the degenerate
    points (m = 0, k in {0, pi}) the choice is unspecified and the
    ``up`` vector is returned.
    """
    if band not in (-1, 1):
        raise ValueError(f"band must be +1 or -1, got {band}")
    m, n = params.mass, params.n
    k = float(k)
    if m == 0.0:
        if np.isclose(np.sin(k), 0.0):
            return np.array([1.0, 0.0], dtype=np.complex128)
        # e^{ik} belongs to the up mover; e^{-i s omega} = e^{ik} iff s*k < 0
        return (
            np.array([1.0, 0.0], dtype=np.complex128)
            if band * k < 0
            else np.array([0.0, 1.0], dtype=np.complex128)
        )
    omega = dispersion_1d(k, params)
    lam = np.exp(-1j * band * omega)
    vec = np.array([-1j * m, n * np.exp(1j * k) - lam], dtype=np.complex128)
    return vec / np.linalg.norm(vec)


def band_weights(field: np.ndarray, params: AutomatonParams1D) -> Tuple[float, float]:
    """Probability weights on the bands (+1, -1), via mode projectors.

    Degenerate modes (sin omega = 0) contribute half their weight to
    each band.
    """
    length = field.shape[1]
    k = 2.0 * np.pi * np.fft.fftfreq(length)
    psi_hat = lat.dft_forward(field)
    omega = dispersion_1d(k, params)
    lam_p = np.exp(-1j * omega)
    lam_m = np.exp(1j * omega)
    u_psi = apply_kernel_1d(psi_hat, k, params)
    gap = lam_p - lam_m
    safe = np.where(np.abs(gap) > _DEGENERATE_EPS, gap, 1.0)
    proj_p = np.where(np.abs(gap) > _DEGENERATE_EPS, (u_psi - lam_m * psi_hat) / safe, 0.5 * psi_hat)
    proj_m = psi_hat - proj_p
    w_p = float(np.sum(np.abs(proj_p) ** 2))
    w_m = float(np.sum(np.abs(proj_m) ** 2))
    return w_p, w_m
