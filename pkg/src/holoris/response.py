"""Array response vectors, beamforming vectors and array gain.

Array gain is the radiated power of the beamformed array relative to a
single element under the same total excitation power:

    gain = |a^T w|^2 / |w0|^2,   subject to  ||w||_2 = |w0|

where a = C^T a0 is the coupling-aware response.  The gain-maximizing
excitation is w = zeta C^H conj(a0), which turns the gain into
|a0^T C C^H conj(a0)|; with no coupling (C = I) every scheme collapses
to conjugate beamforming and the gain is the element count, regardless
of direction.
"""

import math
from enum import Enum

import numpy as np

from .coupling import CouplingMatrix
from .errors import DomainError, NumericalError
from .geometry import ArrayGeometry, Direction, unit_direction

_POWER_TOL = 1e-9


class BeamformingScheme(Enum):
    """The four excitation strategies compared in the gain studies."""

    PROPOSED_MC_AWARE = "proposed_mc_aware"
    CONJUGATE_MC_UNAWARE = "conjugate_mc_unaware"
    DIRECTIVITY_MAX = "directivity_max"
    NO_MC_REFERENCE = "no_mc_reference"


def steering_vector(geom: ArrayGeometry, direction: Direction) -> np.ndarray:
    """Coupling-unaware response: exp(j kappa d_hat . d_n) per element."""
    d_hat = unit_direction(direction)
    return np.exp(1j * geom.wavenumber * (geom.positions @ d_hat))


def effective_response(coupling: CouplingMatrix, a0: np.ndarray) -> np.ndarray:
    """Coupling-aware response vector C^T a0."""
    a0 = np.asarray(a0)
    if coupling.dim != a0.shape[0] or a0.ndim != 1:
        raise DomainError(
            f"response length {a0.shape} does not match coupling dim {coupling.dim}"
        )
    return coupling.values.T @ a0


def _coupling_values(coupling: CouplingMatrix | np.ndarray) -> np.ndarray:
    return coupling.values if isinstance(coupling, CouplingMatrix) else np.asarray(coupling)


def beamforming_vector(scheme: BeamformingScheme, coupling, a0: np.ndarray,
                       w0_mag: float = 1.0) -> np.ndarray:
    """Excitation vector for a scheme, scaled to total power ||w|| = w0_mag.

    * proposed_mc_aware: conj of the effective response, C^H conj(a0).
    * conjugate_mc_unaware: conj(a0), ignoring coupling.
    * directivity_max: C^-1 conj(a0).
    * no_mc_reference: conjugate beamforming evaluated in a coupling-free
      world (identical vector to conjugate_mc_unaware; pair it with C = I
      when evaluating the gain).
    """
    if w0_mag <= 0 or not math.isfinite(w0_mag):
        raise DomainError(f"w0_mag must be positive, got {w0_mag}")
    a0 = np.asarray(a0, dtype=complex)
    c = _coupling_values(coupling)
    if scheme is BeamformingScheme.PROPOSED_MC_AWARE:
        w = c.conj().T @ a0.conj()
    elif scheme is BeamformingScheme.DIRECTIVITY_MAX:
        try:
            w = np.linalg.solve(c, a0.conj())
        except np.linalg.LinAlgError as exc:
            raise NumericalError("singular coupling matrix in directivity_max") from exc
    else:
        w = a0.conj()
    norm = np.linalg.norm(w)
    if norm == 0:
        raise NumericalError(f"{scheme.value} produced a zero excitation vector")
    return (w0_mag / norm) * w


def array_gain(coupling, a0: np.ndarray, w: np.ndarray,
               w0_mag: float | None = None) -> float:
    """Gain |a^T w|^2 / |w0|^2 with a = C^T a0.

    When ``w0_mag`` is given, the excitation power constraint
    ||w|| = w0_mag must hold to 1e-9 relative; otherwise ||w|| itself is
    taken as the power budget.
    """
    a0 = np.asarray(a0)
    w = np.asarray(w)
    norm = float(np.linalg.norm(w))
    if norm == 0:
        raise DomainError("zero excitation vector")
    if w0_mag is not None:
        if abs(norm - w0_mag) > _POWER_TOL * max(abs(w0_mag), 1.0):
            raise DomainError(
                f"power constraint violated: ||w|| = {norm} vs w0 = {w0_mag}"
            )
    else:
        w0_mag = norm
    a = _coupling_values(coupling).T @ a0
    return float(abs(a @ w) ** 2 / w0_mag**2)


def max_gain_closed_form(coupling, a0: np.ndarray) -> float:
    """Gain of the proposed scheme in closed form, |a0^T C C^H conj(a0)|."""
    c = _coupling_values(coupling)
    v = c.conj().T @ np.asarray(a0).conj()
    return float(abs((np.asarray(a0) @ c) @ v))


def gain_sweep(geom: ArrayGeometry, coupling, scheme: BeamformingScheme,
               theta: float, phi_grid, w0_mag: float = 1.0) -> list[tuple[float, float]]:
    """Array gain versus azimuth at a fixed zenith angle.

    Returns (phi, gain) pairs.  For the no-coupling reference scheme the
    gain is evaluated with the identity coupling, so it is flat at the
    element count.
    """
    phis = list(phi_grid)
    if not phis:
        raise DomainError("empty azimuth grid")
    c = _coupling_values(coupling)
    if scheme is BeamformingScheme.NO_MC_REFERENCE:
        c = np.eye(c.shape[0], dtype=complex)
    out = []
    for phi in phis:
        a0 = steering_vector(geom, Direction(phi=phi, theta=theta))
        w = beamforming_vector(scheme, c, a0, w0_mag)
        out.append((float(phi), array_gain(c, a0, w, w0_mag)))
    return out
