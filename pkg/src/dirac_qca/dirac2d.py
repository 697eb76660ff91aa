"""Two-dimensional Dirac automaton.

One step multiplies the four-component field, mode by mode, by the
block unitary

    U(k) = [[ n A(k),  i m I ],
            [ i m I ,  n A(k)^dag ]],

    A(k) = [[ s+(k),            chi* conj(s-(k)) ],
            [ -chi s-(k),       conj(s+(k))      ]],

    s+-(k) = (e^{i kx} +- e^{-i ky}) / 2,   |chi| = 1.

The 1/2 in ``s+-`` is the unique scalar normalization that makes U(k)
unitary for every mass (|s+|^2 + |s-|^2 = 1 identically); it is locked
in by the unitarity suite.  Axis convention: the x shift moves content
toward -x (as in 1D) and the conjugate y shift toward +y.

Because A(k) is in SU(2), U(k) has the doubly degenerate eigenphases
``+- omega_eig`` with

    cos(omega_eig(k)) = z(k) = (n/2) (cos kx + cos ky).

The package reports the dispersion both ways:

* :func:`eigenphase_2d`  -> arccos(z) in [0, pi], the step-operator
  eigenphase, whose gradient is :func:`group_velocity_2d`;
* :func:`dispersion_2d`  -> arcsin(z), which equals pi/2 - arccos(z):
  the two differ by the constant pi/2 (a global phase i on the step)
  and carry opposite gradients.

Band ``s`` labels the eigenvalue ``e^{-i s omega_eig(k)}``; narrowband
packets on band ``s`` transport with velocity
``s * group_velocity_2d(k0)``.

The figure-style "spin up" observable is defined here as the summed
squared magnitude of the first component of each chirality block
(components 0 and 2); the component set is configurable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from . import lattice as lat
from .dirac1d import _DEGENERATE_EPS, _chebyshev_power_apply

SPIN_UP_COMPONENTS = (0, 2)


@dataclass(frozen=True)
class AutomatonParams2D:
    """Mass ``m`` in [0, 1] plus the unit-modulus block phase ``chi``."""

    mass: float
    chi: complex = 1.0 + 0.0j

    def __post_init__(self) -> None:
        m = float(self.mass)
        if not np.isfinite(m) or not 0.0 <= m <= 1.0:
            raise ValueError(f"mass must lie in [0, 1], got {self.mass!r}")
        chi = complex(self.chi)
        mag = abs(chi)
        if not np.isfinite(mag) or abs(mag - 1.0) > 1e-9:
            raise ValueError(f"chi must have unit modulus, got |chi| = {mag}")
        object.__setattr__(self, "mass", m)
        object.__setattr__(self, "chi", chi / mag)

    @property
    def n(self) -> float:
        return float(np.sqrt(1.0 - self.mass * self.mass))


def _shift_symbols(kx, ky) -> Tuple[np.ndarray, np.ndarray]:
    """s+(k), s-(k) with the unitarity-restoring 1/2."""
    ex = np.exp(1j * np.asarray(kx, dtype=float))
    ey = np.exp(-1j * np.asarray(ky, dtype=float))
    return 0.5 * (ex + ey), 0.5 * (ex - ey)


def kernel_matrix_2d(kx, ky, params: AutomatonParams2D) -> np.ndarray:
    """U(kx, ky) as an array of 4x4 matrices (inputs broadcast)."""
    sp, sm = _shift_symbols(kx, ky)
    sp, sm = np.broadcast_arrays(sp, sm)
    m, n, chi = params.mass, params.n, params.chi
    u = np.zeros(sp.shape + (4, 4), dtype=np.complex128)
    # n A(k)
    u[..., 0, 0] = n * sp
    u[..., 0, 1] = n * np.conj(chi) * np.conj(sm)
    u[..., 1, 0] = -n * chi * sm
    u[..., 1, 1] = n * np.conj(sp)
    # n A(k)^dag
    u[..., 2, 2] = n * np.conj(sp)
    u[..., 2, 3] = -n * np.conj(chi) * np.conj(sm)
    u[..., 3, 2] = n * chi * sm
    u[..., 3, 3] = n * sp
    # mass coupling between the chirality blocks
    u[..., 0, 2] = 1j * m
    u[..., 1, 3] = 1j * m
    u[..., 2, 0] = 1j * m
    u[..., 3, 1] = 1j * m
    return u


@dataclass(frozen=True)
class MomentumKernel2D:
    """Per-mode unitary ``(kx, ky) -> U(k)`` of the 2D automaton."""

    params: AutomatonParams2D

    def __call__(self, kx, ky) -> np.ndarray:
        return kernel_matrix_2d(kx, ky, self.params)


def build_kernel_2d(params: AutomatonParams2D) -> MomentumKernel2D:
    return MomentumKernel2D(params)


def apply_kernel_2d(
    psi_hat: np.ndarray, kx: np.ndarray, ky: np.ndarray, params: AutomatonParams2D
) -> np.ndarray:
    """Mode-wise U(k) psi_hat via scalar multipliers (no 4x4 tensors)."""
    sp, sm = _shift_symbols(kx, ky)
    m, n, chi = params.mass, params.n, params.chi
    a, b, c, d = psi_hat
    out = np.empty_like(psi_hat)
    out[0] = n * (sp * a + np.conj(chi) * np.conj(sm) * b) + 1j * m * c
    out[1] = n * (-chi * sm * a + np.conj(sp) * b) + 1j * m * d
    out[2] = n * (np.conj(sp) * c - np.conj(chi) * np.conj(sm) * d) + 1j * m * a
    out[3] = n * (chi * sm * c + sp * d) + 1j * m * b
    return out


def step_2d(field: np.ndarray, params: AutomatonParams2D) -> np.ndarray:
    """One position-space step: nearest-neighbour stencil, norm-preserving.

    Each chirality block couples (x+1, y), (x-1, y), (x, y+1), (x, y-1)
    with weight n/2; the mass couples the blocks on-site with i m.
    """
    m, n, chi = params.mass, params.n, params.chi
    a, b, c, d = field

    def xp(f):  # f(x+1, y)
        return np.roll(f, -1, axis=0)

    def xm(f):  # f(x-1, y)
        return np.roll(f, 1, axis=0)

    def yp(f):  # f(x, y+1)
        return np.roll(f, -1, axis=1)

    def ym(f):  # f(x, y-1)
        return np.roll(f, 1, axis=1)

    out = np.empty_like(field)
    out[0] = 0.5 * n * ((xp(a) + ym(a)) + np.conj(chi) * (xm(b) - yp(b))) + 1j * m * c
    out[1] = 0.5 * n * (-chi * (xp(a) - ym(a)) + (xm(b) + yp(b))) + 1j * m * d
    out[2] = 0.5 * n * ((xm(c) + yp(c)) - np.conj(chi) * (xm(d) - yp(d))) + 1j * m * a
    out[3] = 0.5 * n * (chi * (xp(c) - ym(c)) + (xp(d) + ym(d))) + 1j * m * b
    return out


def dispersion_argument(kx, ky, params: AutomatonParams2D):
    """z(k) = (n/2)(cos kx + cos ky), the arcsin/arccos argument."""
    z = 0.5 * params.n * (np.cos(np.asarray(kx, dtype=float)) + np.cos(np.asarray(ky, dtype=float)))
    return float(z) if np.ndim(z) == 0 else z


def dispersion_2d(kx, ky, params: AutomatonParams2D):
    """Principal arcsin branch arcsin(z(k)); the +- bands carry the sign."""
    w = np.arcsin(np.clip(dispersion_argument(kx, ky, params), -1.0, 1.0))
    return float(w) if np.ndim(w) == 0 else w


def eigenphase_2d(kx, ky, params: AutomatonParams2D):
    """Nonnegative kernel eigenphase arccos(z(k)) = pi/2 - arcsin(z(k))."""
    w = np.arccos(np.clip(dispersion_argument(kx, ky, params), -1.0, 1.0))
    return float(w) if np.ndim(w) == 0 else w


def group_velocity_2d(kx, ky, params: AutomatonParams2D):
    """Gradient of :func:`eigenphase_2d`:

    (vx, vy) = (n/2)(sin kx, sin ky) / sqrt(1 - z(k)^2),  |v| <= 1.

    Undefined (set to 0) on the degenerate locus |z| = 1, which occurs
    only at m = 0, k in {(0, 0), (pi, pi)}.
    """
    kx = np.asarray(kx, dtype=float)
    ky = np.asarray(ky, dtype=float)
    z = dispersion_argument(kx, ky, params)
    den = np.sqrt(np.clip(1.0 - np.square(z), 0.0, None))
    safe = np.where(den > 0.0, den, 1.0)
    half_n = 0.5 * params.n
    vx = np.where(den > 0.0, half_n * np.sin(kx) / safe, 0.0)
    vy = np.where(den > 0.0, half_n * np.sin(ky) / safe, 0.0)
    if np.ndim(vx) == 0 and np.ndim(vy) == 0:
        return float(vx), float(vy)
    return vx, vy


@dataclass(frozen=True)
class GroupVelocityField:
    """|v| and components sampled on a uniform Brillouin-zone grid."""

    kx: np.ndarray  # (resolution,)
    ky: np.ndarray  # (resolution,)
    vx: np.ndarray  # (resolution, resolution)
    vy: np.ndarray
    magnitude: np.ndarray


def group_velocity_field(params: AutomatonParams2D, resolution: int) -> GroupVelocityField:
    """Sample the group velocity on a ``resolution^2`` grid over [-pi, pi)^2."""
    if resolution < 16:
        raise ValueError(f"resolution must be >= 16, got {resolution}")
    k = -np.pi + 2.0 * np.pi * np.arange(resolution) / resolution
    vx, vy = group_velocity_2d(k[:, None], k[None, :], params)
    return GroupVelocityField(kx=k, ky=k, vx=vx, vy=vy, magnitude=np.hypot(vx, vy))


def step_2d_spectral(field: np.ndarray, params: AutomatonParams2D, steps: int) -> np.ndarray:
    """Exact ``steps``-fold evolution by per-mode kernel powers.

    U(k) is normal with minimal polynomial U^2 - 2 z U + I, so the same
    Chebyshev power formula as in 1D applies mode by mode.
    """
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    if steps == 0:
        return field.copy()
    lx, ly = field.shape[1], field.shape[2]
    kx = 2.0 * np.pi * np.fft.fftfreq(lx)[:, None]
    ky = 2.0 * np.pi * np.fft.fftfreq(ly)[None, :]
    psi_hat = lat.dft_forward(field)
    cos_w = dispersion_argument(kx, ky, params)
    u_psi_hat = apply_kernel_2d(psi_hat, kx, ky, params)
    psi_hat = _chebyshev_power_apply(psi_hat, u_psi_hat, cos_w, steps)
    return lat.dft_inverse(psi_hat)


def band_eigenvector_2d(kx: float, ky: float, params: AutomatonParams2D, band: int = 1) -> np.ndarray:
    """Deterministic unit eigenvector of U(k) with eigenvalue e^{-i band omega_eig}.

    Each band is doubly degenerate; the representative returned lives in
    the block eigenspace built on the +theta eigenvector of A(k), where
    A = cos(theta) I + i sin(theta) (alpha . sigma).
    """
    if band not in (-1, 1):
        raise ValueError(f"band must be +1 or -1, got {band}")
    kx, ky = float(kx), float(ky)
    m, n, chi = params.mass, params.n, params.chi
    sp, sm = _shift_symbols(kx, ky)
    # A = a0 I + i alpha.sigma with real alpha
    alpha = np.array([-np.imag(chi * sm), np.real(chi * sm), np.imag(sp)])
    mag = float(np.linalg.norm(alpha))
    if mag < _DEGENERATE_EPS:
        w = np.array([1.0, 0.0], dtype=np.complex128)
    elif mag + alpha[2] > _DEGENERATE_EPS:
        w = np.array([mag + alpha[2], alpha[0] + 1j * alpha[1]], dtype=np.complex128)
        w /= np.linalg.norm(w)
    else:
        w = np.array([0.0, 1.0], dtype=np.complex128)
    theta = np.arctan2(mag, float(np.real(sp)))
    # In the (w, 0), (0, w) subspace, U reduces to the 1D kernel at k = theta.
    omega = float(np.arccos(np.clip(n * np.cos(theta), -1.0, 1.0)))
    lam = np.exp(-1j * band * omega)
    if m == 0.0:
        mu, nu = (1.0 + 0.0j, 0.0j) if abs(np.exp(1j * theta) - lam) < 1e-9 else (0.0j, 1.0 + 0.0j)
    else:
        mu, nu = -1j * m, n * np.exp(1j * theta) - lam
    vec = np.concatenate([mu * w, nu * w])
    return vec / np.linalg.norm(vec)


def spin_component_probability(
    field: np.ndarray, components: Tuple[int, ...] = SPIN_UP_COMPONENTS
) -> np.ndarray:
    """Per-site probability carried by the given spin components."""
    return np.sum(np.abs(field[list(components)]) ** 2, axis=0)
