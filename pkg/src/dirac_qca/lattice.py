"""Lattice geometry, spinor fields, and unitary discrete Fourier transforms.

Conventions fixed for the whole package:

* Spinor fields are complex128 arrays with the component axis first:
  shape ``(2, L)`` in one dimension and ``(4, Lx, Ly)`` in two.  The 2D
  component order is ``(a, b, c, d)`` where ``(a, b)`` is the first
  chirality block and ``(c, d)`` the second.
* Momentum modes are ``k = 2*pi*j/L`` with ``j`` ranging over
  ``{-floor(L/2), ..., ceil(L/2)-1}``, stored in numpy fft (wrapped)
  order; see :meth:`Lattice1D.momentum_grid`.
* Mode expansion: ``psi(x) = L**-0.5 * sum_k exp(+1j*k*x) * psi_hat(k)``.
  :func:`dft_forward` maps ``psi -> psi_hat`` and is unitary.
* Translating content by one site toward +x multiplies mode ``k`` by
  ``exp(-1j*k)``.

All operations are pure functions: inputs are never mutated, and
identical inputs produce bit-identical outputs (single-threaded numpy,
fixed reduction order).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

import numpy as np

# Largest relative envelope amplitude tolerated at the periodic seam of a
# Gaussian packet; larger leakage is rejected by the constructor.
SEAM_THRESHOLD = 1e-12

# Radius (in units of the width parameter) beyond which a Gaussian
# envelope drops below SEAM_THRESHOLD: exp(-r^2/(4 w^2)) < 1e-12.
SUPPORT_RADII = 2.0 * np.sqrt(np.log(1.0 / SEAM_THRESHOLD))


@dataclass(frozen=True)
class Lattice1D:
    """Periodic chain of ``length`` sites with unit spacing."""

    length: int

    def __post_init__(self) -> None:
        if not isinstance(self.length, (int, np.integer)) or self.length < 2:
            raise ValueError(f"lattice length must be an integer >= 2, got {self.length!r}")

    @property
    def shape(self) -> Tuple[int, ...]:
        return (self.length,)

    @property
    def n_sites(self) -> int:
        return self.length

    def sites(self) -> np.ndarray:
        return np.arange(self.length)

    def momentum_grid(self) -> np.ndarray:
        """Brillouin-zone modes ``2*pi*j/L`` in fft (wrapped) order."""
        return 2.0 * np.pi * np.fft.fftfreq(self.length)


@dataclass(frozen=True)
class Lattice2D:
    """Periodic rectangle of ``lx * ly`` sites with unit spacing."""

    lx: int
    ly: int

    def __post_init__(self) -> None:
        for name, value in (("lx", self.lx), ("ly", self.ly)):
            if not isinstance(value, (int, np.integer)) or value < 2:
                raise ValueError(f"lattice {name} must be an integer >= 2, got {value!r}")

    @property
    def shape(self) -> Tuple[int, ...]:
        return (self.lx, self.ly)

    @property
    def n_sites(self) -> int:
        return self.lx * self.ly

    def momentum_grids(self) -> Tuple[np.ndarray, np.ndarray]:
        """Mode arrays (kx, ky) broadcastable to the lattice shape."""
        kx = 2.0 * np.pi * np.fft.fftfreq(self.lx)
        ky = 2.0 * np.pi * np.fft.fftfreq(self.ly)
        return kx[:, None], ky[None, :]


Lattice = Union[Lattice1D, Lattice2D]


def _components(lattice: Lattice) -> int:
    return 2 if isinstance(lattice, Lattice1D) else 4


def _as_spinor(spinor: Sequence[complex], n_comp: int) -> np.ndarray:
    s = np.asarray(spinor, dtype=np.complex128)
    if s.shape != (n_comp,):
        raise ValueError(f"spinor must have shape ({n_comp},), got {s.shape}")
    sn = float(np.sum(np.abs(s) ** 2))
    if not np.isfinite(sn) or abs(sn - 1.0) > 1e-9:
        raise ValueError(f"spinor must be unit norm, got |s|^2 = {sn}")
    return s / np.sqrt(sn)


@dataclass(frozen=True, eq=False)
class WavepacketSpec:
    """Gaussian packet: center, width, carrier momentum, polarization, band.

    ``width`` is the per-axis width parameter of the amplitude envelope
    ``exp(-|x - x0|^2 / (4 width^2))``; the per-axis standard deviation
    of the resulting probability density equals ``width``.
    ``polarization`` may be left ``None`` when a caller resolves it from
    the band (see the automaton modules); :func:`gaussian_packet`
    requires it to be set.
    """

    center: Tuple[float, ...]
    width: Tuple[float, ...]
    momentum: Tuple[float, ...]
    band: int = 1
    polarization: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        center = tuple(float(c) for c in np.atleast_1d(self.center))
        width = tuple(float(w) for w in np.atleast_1d(self.width))
        momentum = tuple(float(k) for k in np.atleast_1d(self.momentum))
        if not (len(center) == len(width) == len(momentum)):
            raise ValueError("center, width and momentum must have matching dimensionality")
        if any(w <= 0 for w in width):
            raise ValueError(f"widths must be positive, got {width}")
        if any(abs(k) > np.pi + 1e-12 for k in momentum):
            raise ValueError(f"momentum components must lie in [-pi, pi], got {momentum}")
        if self.band not in (-1, 1):
            raise ValueError(f"band must be +1 or -1, got {self.band}")
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "width", width)
        object.__setattr__(self, "momentum", momentum)
        if self.polarization is not None:
            pol = _as_spinor(self.polarization, 2 if len(center) == 1 else 4)
            object.__setattr__(self, "polarization", pol)

    @property
    def dimension(self) -> int:
        return len(self.center)


def vacuum(lattice: Lattice) -> np.ndarray:
    """All-zero field: the single-particle-sector vacuum."""
    return np.zeros((_components(lattice),) + lattice.shape, dtype=np.complex128)


def delta_state(lattice: Lattice, site, spinor: Sequence[complex]) -> np.ndarray:
    """Unit-norm field equal to ``spinor`` at ``site`` and zero elsewhere."""
    field = vacuum(lattice)
    s = _as_spinor(spinor, _components(lattice))
    if isinstance(lattice, Lattice1D):
        x = int(site)
        if not 0 <= x < lattice.length:
            raise ValueError(f"site {site} outside lattice of length {lattice.length}")
        field[:, x] = s
    else:
        x, y = (int(c) for c in site)
        if not (0 <= x < lattice.lx and 0 <= y < lattice.ly):
            raise ValueError(f"site {site} outside lattice of shape {lattice.shape}")
        field[:, x, y] = s
    return field


def plane_wave(lattice: Lattice, momentum, spinor: Sequence[complex]) -> np.ndarray:
    """Normalized plane wave ``exp(i k.x) * spinor / sqrt(N)``.

    Only lattice-commensurate momenta give exactly periodic states; tests
    use on-grid modes.
    """
    s = _as_spinor(spinor, _components(lattice))
    if isinstance(lattice, Lattice1D):
        k = float(np.atleast_1d(momentum)[0])
        phase = np.exp(1j * k * lattice.sites())
    else:
        kx, ky = (float(c) for c in momentum)
        x = np.arange(lattice.lx)[:, None]
        y = np.arange(lattice.ly)[None, :]
        phase = np.exp(1j * (kx * x + ky * y))
    field = s.reshape((-1,) + (1,) * len(lattice.shape)) * phase
    return field / np.sqrt(lattice.n_sites)


def _axis_offsets(length: int, x0: float) -> np.ndarray:
    """Minimal-image displacements of each site from ``x0``."""
    return (np.arange(length, dtype=float) - x0 + length / 2.0) % length - length / 2.0


def gaussian_packet(lattice: Lattice, spec: WavepacketSpec) -> np.ndarray:
    """Normalized Gaussian wavepacket per ``spec``.

    ``field(x) ~ exp(-|x - x0|^2 / (4 w^2)) * exp(i k0.x) * polarization``.
    Rejects widths whose envelope is not negligible (relative amplitude
    below :data:`SEAM_THRESHOLD`) at the periodic seam.
    """
    if spec.polarization is None:
        raise ValueError("spec.polarization must be set; resolve it from the band first")
    dims = lattice.shape
    if spec.dimension != len(dims):
        raise ValueError(f"spec dimension {spec.dimension} does not match lattice {len(dims)}D")
    for axis, (length, w) in enumerate(zip(dims, spec.width)):
        leak = np.exp(-((length / 2.0) ** 2) / (4.0 * w * w))
        if leak >= SEAM_THRESHOLD:
            raise ValueError(
                f"Gaussian envelope leaks {leak:.3e} (>= {SEAM_THRESHOLD}) at the periodic "
                f"seam along axis {axis}; enlarge the lattice or shrink the width"
            )

    if isinstance(lattice, Lattice1D):
        off = _axis_offsets(lattice.length, spec.center[0])
        envelope = np.exp(-(off ** 2) / (4.0 * spec.width[0] ** 2))
        phase = np.exp(1j * spec.momentum[0] * lattice.sites())
        scalar = envelope * phase
    else:
        offx = _axis_offsets(lattice.lx, spec.center[0])
        offy = _axis_offsets(lattice.ly, spec.center[1])
        envelope = np.exp(-(offx[:, None] ** 2) / (4.0 * spec.width[0] ** 2)) * np.exp(
            -(offy[None, :] ** 2) / (4.0 * spec.width[1] ** 2)
        )
        x = np.arange(lattice.lx)[:, None]
        y = np.arange(lattice.ly)[None, :]
        phase = np.exp(1j * (spec.momentum[0] * x + spec.momentum[1] * y))
        scalar = envelope * phase
    field = spec.polarization.reshape((-1,) + (1,) * len(dims)) * scalar
    return normalize(field)


def dft_forward(field: np.ndarray) -> np.ndarray:
    """Unitary transform to momentum space (fft order along spatial axes)."""
    spatial = tuple(range(1, field.ndim))
    n = np.prod([field.shape[a] for a in spatial])
    return np.fft.fftn(field, axes=spatial) / np.sqrt(n)


def dft_inverse(field_hat: np.ndarray) -> np.ndarray:
    """Inverse of :func:`dft_forward`."""
    spatial = tuple(range(1, field_hat.ndim))
    n = np.prod([field_hat.shape[a] for a in spatial])
    return np.fft.ifftn(field_hat, axes=spatial) * np.sqrt(n)


def norm(field: np.ndarray) -> float:
    """l2 norm sqrt(sum |psi|^2) over all components and sites."""
    return float(np.sqrt(np.sum(np.abs(field) ** 2)))


def normalize(field: np.ndarray) -> np.ndarray:
    n = norm(field)
    if n == 0.0:
        raise ValueError("cannot normalize the zero field")
    return field / n


def probability_map(field: np.ndarray, per_component: bool = False) -> np.ndarray:
    """Per-site squared magnitudes; sums to the squared total norm.

    With ``per_component=True`` the leading spin axis is retained.
    """
    p = np.abs(field) ** 2
    return p if per_component else p.sum(axis=0)
