"""Effective correlation under coupling, eigenvalue spectra, knee and
dominance metrics, and the inter-element correlation/coupling strength
indicator (ICSI).

ICSI of a square matrix Q is the mean off-diagonal magnitude normalized
per row by the diagonal magnitude:

    ICSI = 1 / (N (N-1)) * sum_{n != m} |Q[n, m]| / |Q[n, n]|

0 means no off-diagonal coupling/correlation, 1 the all-ones extreme.
"""

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .correlation import CorrelationKind, CorrelationMatrix
from .coupling import CouplingMatrix, CouplingSide
from .errors import DomainError, KneeUndefinedError
from .geometry import ArrayGeometry

_HERMITIAN_TOL = 1e-8
_DOMINANCE_THRESHOLD = 1e-2
# Knee detection looks at the dynamic range a log-scale eigenvalue plot
# actually shows; entries further than this factor below the maximum are
# numerical floor, not spectrum shape.
_KNEE_FLOOR = 1e-6
_KNEE_SEARCH_START = 4


class Normalization(Enum):
    RAW = "raw"
    BY_N = "by_N"


@dataclass(frozen=True)
class EigenSpectrum:
    """Non-increasing real eigenvalue list with derived metrics.

    ``knee_index`` is None when no knee is detectable (all-flat spectra).
    ``asymptotic_dof`` is filled when the source geometry is known.
    """

    values: np.ndarray = field(repr=False)
    normalization: Normalization
    dominant_count: int
    knee_index: int | None
    asymptotic_dof: int | None = None

    @property
    def n(self) -> int:
        return len(self.values)


def effective_correlation(coupling: CouplingMatrix,
                          r0: CorrelationMatrix) -> CorrelationMatrix:
    """Effective correlation C^T R0 conj(C) under a coupling matrix."""
    if r0.kind is not CorrelationKind.MC_UNAWARE:
        raise DomainError(f"base correlation must be mc_unaware, got {r0.kind.value}")
    if coupling.dim != r0.dim:
        raise DomainError(
            f"coupling dim {coupling.dim} does not match correlation dim {r0.dim}"
        )
    c = coupling.values
    values = c.T @ r0.values @ c.conj()
    kind = (CorrelationKind.EFFECTIVE_TX if coupling.side is CouplingSide.TX
            else CorrelationKind.EFFECTIVE_RX)
    return CorrelationMatrix(values=values, kind=kind)


def dominant_count(values: np.ndarray,
                   threshold: float = _DOMINANCE_THRESHOLD) -> int:
    """Number of eigenvalues above ``threshold`` times the largest."""
    values = np.asarray(values)
    if len(values) == 0:
        return 0
    return int((values > threshold * values.max()).sum())


def knee_index(values, floor: float = _KNEE_FLOOR,
               start: int = _KNEE_SEARCH_START) -> int:
    """Index where a non-increasing eigenvalue list starts to drop rapidly.

    Maximizes the discrete second difference of log10(values), i.e. the
    downward bend 2 y[i] - y[i-1] - y[i+1], over the positive-eigenvalue
    range, searching from ``start`` onward and only at indices whose
    value is within ``floor`` of the maximum (entries below that are
    numerical floor).  Ties resolve to the smallest index.
    """
    ev = np.asarray(getattr(values, "values", values), dtype=float)
    ev = ev[ev > 0.0]
    if len(ev) < 8:
        raise DomainError(f"knee detection needs >= 8 positive eigenvalues, got {len(ev)}")
    spread = (ev.max() - ev.min()) / ev.max()
    if spread < 1e-9:
        raise KneeUndefinedError("knee undefined for an all-equal spectrum")
    y = np.log10(ev)
    last = len(ev) - 2
    while last > 0 and ev[last] < floor * ev[0]:
        last -= 1
    if last < start:
        raise KneeUndefinedError(
            "knee undefined: no searchable indices within the dynamic range"
        )
    idx = np.arange(start, last + 1)
    bend = 2.0 * y[idx] - y[idx - 1] - y[idx + 1]
    return int(idx[np.argmax(bend)])


def eigen_spectrum(r: CorrelationMatrix, normalize_by_n: bool = True,
                   geom: ArrayGeometry | None = None) -> EigenSpectrum:
    """Eigenvalues of a correlation matrix, sorted non-increasing.

    The input must be Hermitian within 1e-8 of its scale.  Effective
    correlation matrices of lossy couplings can carry tiny negative
    eigenvalues; magnitudes are reported (matching how eigenvalue decay
    is normally displayed), which leaves exact PSD spectra untouched.
    """
    values = r.values
    scale = float(np.abs(values).max()) or 1.0
    defect = float(np.abs(values - values.conj().T).max())
    if defect > _HERMITIAN_TOL * scale:
        raise DomainError(f"matrix not Hermitian: defect {defect:.3e} at scale {scale:.3e}")
    ev = np.linalg.eigvalsh(0.5 * (values + values.conj().T))
    ev = np.sort(np.abs(ev))[::-1]
    if normalize_by_n:
        ev = ev / r.dim
    knee: int | None
    try:
        knee = knee_index(ev)
    except (DomainError, KneeUndefinedError):
        knee = None
    return EigenSpectrum(
        values=ev,
        normalization=Normalization.BY_N if normalize_by_n else Normalization.RAW,
        dominant_count=dominant_count(ev),
        knee_index=knee,
        asymptotic_dof=asymptotic_dof(geom) if geom is not None else None,
    )


def asymptotic_dof(geom: ArrayGeometry) -> int:
    """Far-field spatial degrees of freedom of the aperture,
    ceil(pi lx lz / wavelength^2)."""
    return math.ceil(math.pi * geom.lx * geom.lz / geom.wavelength**2)


def icsi(q) -> float:
    """Inter-element correlation/coupling strength indicator of a square
    matrix (accepts raw arrays or any of the matrix wrapper types)."""
    values = np.asarray(getattr(q, "values", q))
    if values.ndim != 2 or values.shape[0] != values.shape[1]:
        raise DomainError(f"ICSI needs a square matrix, got shape {values.shape}")
    n = values.shape[0]
    if n < 2:
        raise DomainError("ICSI needs at least two elements")
    mags = np.abs(values)
    diag = np.diag(mags)
    if np.any(diag == 0.0):
        raise DomainError("ICSI undefined: zero diagonal entry")
    ratios = mags / diag[:, None]
    return float((ratios.sum() - n) / (n * (n - 1)))
