"""Envelope correlation between radiated field patterns.

Correlation is computed from full-sphere complex fields: the squared
magnitude of the polarization-resolved inner product, normalized by
each pattern's radiated power. Identical patterns give 1, orthogonally
polarized ones give 0, and phase gradients from physical displacement
of one radiator against another drive the value down in between.
"""

from __future__ import annotations

import numpy as np

from .arrays import RadiationPattern
from .errors import DegeneratePatternError, GridMismatchError

# Cauchy-Schwarz bounds the true value to [0, 1]; only rounding noise
# may poke past, so anything farther out than this is a real bug.
_CLAMP_TOL = 1e-12


def ecc(p1: RadiationPattern, p2: RadiationPattern) -> float:
    """Envelope correlation coefficient of two patterns on one grid."""
    if not p1.same_grid(p2):
        raise GridMismatchError(
            "patterns sampled on different grids; resample before correlating"
        )
    w = p1.solid_angle_weights()
    inner = np.sum(
        w * (p1.e_theta * np.conj(p2.e_theta) + p1.e_phi * np.conj(p2.e_phi))
    )
    power1 = float(np.sum(w * p1.power_density()))
    power2 = float(np.sum(w * p2.power_density()))
    if power1 <= 0.0 or power2 <= 0.0:
        raise DegeneratePatternError(
            "a zero-power pattern has no envelope correlation"
        )
    rho = float(np.abs(inner) ** 2 / (power1 * power2))
    if rho > 1.0:
        if rho > 1.0 + _CLAMP_TOL:
            raise DegeneratePatternError(
                f"correlation {rho} exceeds 1 beyond rounding tolerance"
            )
        rho = 1.0
    return rho


def apply_displacement(
    pattern: RadiationPattern, offset_wavelengths
) -> RadiationPattern:
    """Phase a pattern as if its radiator moved by a rigid offset.

    offset_wavelengths is an (dx, dy, dz) translation in free-space
    wavelengths; each far-field sample picks up exp(+j 2 pi r_hat . d).
    Power density is untouched, only the phase front tilts.
    """
    dx, dy, dz = (float(v) for v in offset_wavelengths)
    theta = np.radians(pattern.theta_deg)[:, np.newaxis]
    phi = np.radians(pattern.phi_deg)[np.newaxis, :]
    st = np.sin(theta)
    r_dot_d = st * np.cos(phi) * dx + st * np.sin(phi) * dy + np.cos(theta) * dz
    phase = np.exp(2j * np.pi * r_dot_d)
    return RadiationPattern(
        theta_deg=pattern.theta_deg.copy(),
        phi_deg=pattern.phi_deg.copy(),
        e_theta=pattern.e_theta * phase,
        e_phi=pattern.e_phi * phase,
        frequency_ghz=pattern.frequency_ghz,
    )


def rotate_polarization(pattern: RadiationPattern) -> RadiationPattern:
    """Swap the field into the orthogonal polarization (e_theta -> e_phi).

    Useful for constructing exactly uncorrelated pattern pairs in tests
    and for modelling a module mounted with perpendicular polarization.
    """
    return RadiationPattern(
        theta_deg=pattern.theta_deg.copy(),
        phi_deg=pattern.phi_deg.copy(),
        e_theta=pattern.e_phi.copy(),
        e_phi=pattern.e_theta.copy(),
        frequency_ghz=pattern.frequency_ghz,
    )
