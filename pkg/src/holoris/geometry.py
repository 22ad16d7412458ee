"""Element layouts for dense planar apertures in the xoz plane.

Two constructors are provided: a uniform rectangular grid of isotropic
elements and a stacked layout of vertical half-wave dipoles (rows of
dipoles along z, each row a line of elements along x).  Elements sit at
lattice points with zero y-component; element ordering is row-major
with the x index fastest.
"""

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import ConfigError, DomainError

_RATIO_TOL = 1e-9


class ElementKind(Enum):
    ISOTROPIC = "isotropic"
    HALF_WAVE_DIPOLE = "half_wave_dipole"


@dataclass(frozen=True)
class Direction:
    """Far-field direction: azimuth ``phi`` from +x toward +y, zenith
    ``theta`` from +z, both in radians and restricted to [0, pi]."""

    phi: float
    theta: float

    def __post_init__(self):
        if not (math.isfinite(self.phi) and math.isfinite(self.theta)):
            raise DomainError("direction angles must be finite")
        if not (0.0 <= self.phi <= math.pi and 0.0 <= self.theta <= math.pi):
            raise DomainError(
                f"direction angles must lie in [0, pi], got phi={self.phi}, theta={self.theta}"
            )


@dataclass(frozen=True)
class ArrayGeometry:
    """Immutable description of a discretized planar aperture.

    Attributes
    ----------
    wavelength : float
        Carrier wavelength (sets the length unit scale).
    dx, dz : float
        Center-to-center element spacing along x and z.
    lx, lz : float
        Aperture extents.  For dipole layouts ``lz`` is the tip-to-tip
        extent ``nz*(dipole_length) + (nz-1)*gap``.
    nx, nz : int
        Element counts per axis; total count is ``nx * nz``.
    positions : ndarray, shape (nx*nz, 3)
        Element positions in the xoz plane (y = 0), x index fastest.
    element_kind : ElementKind
    dipole_length : float
        Physical dipole length (wavelength / 2) for dipole layouts, 0 otherwise.
    """

    wavelength: float
    dx: float
    dz: float
    lx: float
    lz: float
    nx: int
    nz: int
    positions: np.ndarray = field(repr=False)
    element_kind: ElementKind
    dipole_length: float = 0.0

    def __post_init__(self):
        self.positions.setflags(write=False)

    @property
    def n(self) -> int:
        return self.nx * self.nz

    @property
    def wavenumber(self) -> float:
        return 2.0 * math.pi / self.wavelength

    def x_index(self) -> np.ndarray:
        """Per-element column index along x (row-major, x fastest)."""
        return np.tile(np.arange(self.nx), self.nz)

    def z_index(self) -> np.ndarray:
        """Per-element row index along z."""
        return np.repeat(np.arange(self.nz), self.nx)


def _check_positive(**lengths: float) -> None:
    for name, value in lengths.items():
        if not (math.isfinite(value) and value > 0.0):
            raise DomainError(f"{name} must be positive and finite, got {value}")


def _count_from_ratio(aperture: float, spacing: float, label: str) -> int:
    ratio = aperture / spacing
    nearest = round(ratio)
    if nearest < 1 or abs(ratio - nearest) > _RATIO_TOL * max(1.0, abs(ratio)):
        raise ConfigError(
            f"{label} aperture/spacing ratio {ratio} is not integral"
        )
    return int(nearest) + 1


def _lattice(nx: int, nz: int, dx: float, dz: float) -> np.ndarray:
    ix = np.tile(np.arange(nx), nz)
    iz = np.repeat(np.arange(nz), nx)
    pos = np.zeros((nx * nz, 3))
    pos[:, 0] = ix * dx
    pos[:, 2] = iz * dz
    return pos


def make_uniform_grid(lx: float, lz: float, dx: float, dz: float,
                      wavelength: float) -> ArrayGeometry:
    """Uniform grid of isotropic elements with elements at both aperture ends,
    so the per-axis count is aperture/spacing + 1."""
    _check_positive(lx=lx, lz=lz, dx=dx, dz=dz, wavelength=wavelength)
    nx = _count_from_ratio(lx, dx, "x")
    nz = _count_from_ratio(lz, dz, "z")
    return ArrayGeometry(
        wavelength=wavelength,
        dx=dx, dz=dz, lx=lx, lz=lz, nx=nx, nz=nz,
        positions=_lattice(nx, nz, dx, dz),
        element_kind=ElementKind.ISOTROPIC,
    )


def make_dipole_array(lx: float, dx: float, n_rows: int, gap: float,
                      wavelength: float) -> ArrayGeometry:
    """Stacked rows of vertical half-wave dipoles.

    Each row is a line of dipoles along x with spacing ``dx``; ``n_rows``
    rows are stacked along z with a tip-to-tip gap ``gap`` between
    consecutive dipoles, giving a vertical center-to-center spacing of
    ``wavelength/2 + gap``.  Positions are dipole centers.
    """
    _check_positive(lx=lx, dx=dx, wavelength=wavelength)
    if n_rows < 1:
        raise DomainError(f"n_rows must be >= 1, got {n_rows}")
    if gap < 0.0 or not math.isfinite(gap):
        raise DomainError(f"gap must be >= 0, got {gap}")
    nx = _count_from_ratio(lx, dx, "x")
    nz = int(n_rows)
    dipole_length = wavelength / 2.0
    dz_eff = dipole_length + gap
    lz = nz * dipole_length + (nz - 1) * gap
    return ArrayGeometry(
        wavelength=wavelength,
        dx=dx, dz=dz_eff, lx=lx, lz=lz, nx=nx, nz=nz,
        positions=_lattice(nx, nz, dx, dz_eff),
        element_kind=ElementKind.HALF_WAVE_DIPOLE,
        dipole_length=dipole_length,
    )


def unit_direction(direction: Direction) -> np.ndarray:
    """Unit vector (sin t cos p, sin t sin p, cos t) for a far-field direction."""
    st = math.sin(direction.theta)
    return np.array([
        st * math.cos(direction.phi),
        st * math.sin(direction.phi),
        math.cos(direction.theta),
    ])
