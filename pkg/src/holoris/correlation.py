"""Spatial correlation matrices under isotropic scattering.

For elements confined to the xoz plane and scattering power spread
uniformly over the half-space solid angle, the pairwise correlation
collapses to a sinc kernel of the element distance:

    corr(n1, n2) = sinc(2 |d_n1 - d_n2| / wavelength)

so the full matrix on a uniform lattice is symmetric block-Toeplitz
with Toeplitz blocks (BTTB).
"""

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import DomainError
from .geometry import ArrayGeometry, Direction

_HERMITIAN_TOL = 1e-10
_PSD_TOL = 1e-8


class CorrelationKind(Enum):
    MC_UNAWARE = "mc_unaware"
    EFFECTIVE_TX = "effective_tx"
    EFFECTIVE_RX = "effective_rx"


@dataclass(frozen=True)
class CorrelationMatrix:
    """Hermitian positive-semidefinite correlation matrix."""

    values: np.ndarray = field(repr=False)
    kind: CorrelationKind

    def __post_init__(self):
        v = self.values
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise DomainError(f"correlation matrix must be square, got {v.shape}")
        v.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.values.shape[0]

    def hermiticity_defect(self) -> float:
        return float(np.abs(self.values - self.values.conj().T).max())

    def check_invariants(self, hermitian_tol: float = _HERMITIAN_TOL,
                         psd_tol: float = _PSD_TOL) -> None:
        """Raise if the matrix is not Hermitian PSD (within tolerances)."""
        defect = self.hermiticity_defect()
        if defect > hermitian_tol:
            raise DomainError(f"matrix not Hermitian: defect {defect:.3e}")
        ev = np.linalg.eigvalsh(0.5 * (self.values + self.values.conj().T))
        if ev[0] < -psd_tol * max(ev[-1], 0.0):
            raise DomainError(f"matrix not PSD: min eigenvalue {ev[0]:.3e}")


@dataclass(frozen=True)
class BttbReport:
    is_bttb: bool
    max_violation: float


def isotropic_scattering_density(direction: Direction) -> float:
    """Scattering density sin(theta) / (2 pi) over (phi, theta) in [0, pi]^2.

    Integrates to 1 over the domain.
    """
    return math.sin(direction.theta) / (2.0 * math.pi)


def correlation_matrix_isotropic(geom: ArrayGeometry) -> CorrelationMatrix:
    """Correlation matrix of a geometry under isotropic scattering.

    Entries are the closed-form sinc kernel of pairwise distances; the
    result is real with unit diagonal.
    """
    if geom.n == 0:
        raise DomainError("geometry has no elements")
    pos = geom.positions
    diff = pos[:, None, :] - pos[None, :, :]
    dist = np.linalg.norm(diff, axis=2)
    values = np.sinc(2.0 * dist / geom.wavelength)
    return CorrelationMatrix(values=values, kind=CorrelationKind.MC_UNAWARE)


def verify_bttb(matrix, geom: ArrayGeometry, tol: float = 1e-10) -> BttbReport:
    """Check the block-Toeplitz-with-Toeplitz-blocks structure of a matrix
    built on a uniform grid (row-major ordering, x index fastest).

    Verifies that blocks are constant along block diagonals, each block
    is Toeplitz, and the block at offset -m is the transpose of the
    block at +m.  ``max_violation`` is the largest entry mismatch.
    """
    values = matrix.values if hasattr(matrix, "values") else np.asarray(matrix)
    n = geom.n
    if values.shape != (n, n):
        raise DomainError(
            f"matrix shape {values.shape} does not match geometry with {n} elements"
        )
    nx, nz = geom.nx, geom.nz
    blocks = values.reshape(nz, nx, nz, nx)
    worst = 0.0

    # representative block per block offset m = bz2 - bz1
    rep = {}
    for m in range(-(nz - 1), nz):
        if m >= 0:
            rep[m] = blocks[0, :, m, :]
        else:
            rep[m] = blocks[-m, :, 0, :]

    for bz1 in range(nz):
        for bz2 in range(nz):
            blk = blocks[bz1, :, bz2, :]
            worst = max(worst, float(np.abs(blk - rep[bz2 - bz1]).max()))

    for m in range(nz):
        blk = rep[m]
        # Toeplitz within the block: entries depend on j - i only
        first_col = blk[:, 0]
        first_row = blk[0, :]
        for i in range(nx):
            for j in range(nx):
                ref = first_row[j - i] if j >= i else first_col[i - j]
                worst = max(worst, abs(blk[i, j] - ref))
        worst = max(worst, float(np.abs(rep[-m] - blk.T).max()))

    return BttbReport(is_bttb=worst <= tol, max_violation=worst)
