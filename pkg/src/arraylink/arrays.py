"""Planar phased-array geometry and far-field pattern synthesis.

The array sits in the z = 0 plane with boresight along +z. Columns run
along x with ``spacing_col`` between adjacent columns, rows run along y
with ``spacing_row``; both spacings are in free-space wavelengths, so
the same geometry serves any carrier once angles are the only question.
Element positions are centered on the origin.

Angles follow one convention everywhere:

* pattern coordinates: polar angle theta measured from boresight,
  azimuth phi measured from +x toward +y;
* steering: azimuth-over-elevation, with the steered unit vector
  (sin az cos el, sin el, cos az cos el) so (0, 0) is boresight.

Sampled patterns place theta at cell midpoints (i + 0.5) * res and phi
at nodes j * res. Midpoint theta keeps the sin(theta) quadrature away
from the poles and from the hard edge of hemispherical element models;
node phi guarantees the principal planes 0/90/180/270 are exact grid
columns.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import (
    DegeneratePatternError,
    InvalidGeometryError,
    InvalidResolutionError,
    NoBeamwidthError,
)

ELEMENT_MODELS = ("isotropic", "cosine_q")

# q for which the cos^q element alone has 13.0 dBi directivity; handy
# for budget checks because D = 2 * (2q + 1) is exact for this model
Q_FOR_13_DBI = (10.0 ** 1.3 / 2.0 - 1.0) / 2.0


@dataclass(frozen=True)
class ArrayGeometry:
    """Uniform rectangular lattice of identical radiating elements."""

    rows: int
    cols: int
    spacing_row: float = 0.5
    spacing_col: float = 0.5
    element_model: str = "cosine_q"
    element_q: float = 1.0
    steer_limit_az_deg: float = 60.0
    steer_limit_el_deg: float = 60.0

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise InvalidGeometryError(
                f"element counts must be >= 1, got {self.rows}x{self.cols}"
            )
        if self.spacing_row <= 0.0 or self.spacing_col <= 0.0:
            raise InvalidGeometryError(
                "element spacings must be positive wavelength fractions, got "
                f"{self.spacing_row} x {self.spacing_col}"
            )
        if self.element_model not in ELEMENT_MODELS:
            raise InvalidGeometryError(
                f"unknown element model {self.element_model!r}; "
                f"expected one of {ELEMENT_MODELS}"
            )
        if self.element_model == "cosine_q" and self.element_q < 0.0:
            raise InvalidGeometryError(
                f"cosine exponent must be >= 0, got {self.element_q}"
            )
        if self.steer_limit_az_deg <= 0.0 or self.steer_limit_el_deg <= 0.0:
            raise InvalidGeometryError("steering limits must be positive")

    @property
    def n_elements(self) -> int:
        return self.rows * self.cols

    def element_positions(self) -> tuple[np.ndarray, np.ndarray]:
        """Centered column-x and row-y coordinates in wavelengths."""
        x = (np.arange(self.cols) - (self.cols - 1) / 2.0) * self.spacing_col
        y = (np.arange(self.rows) - (self.rows - 1) / 2.0) * self.spacing_row
        return x, y


@dataclass(frozen=True)
class Steering:
    """Beam-steering command in azimuth-over-elevation degrees."""

    azimuth_deg: float = 0.0
    elevation_deg: float = 0.0

    def direction_cosines(self) -> tuple[float, float]:
        """(u0, v0) = (sin az cos el, sin el) of the steered direction."""
        az = math.radians(self.azimuth_deg)
        el = math.radians(self.elevation_deg)
        return math.sin(az) * math.cos(el), math.sin(el)

    def unit_vector(self) -> np.ndarray:
        az = math.radians(self.azimuth_deg)
        el = math.radians(self.elevation_deg)
        return np.array(
            [
                math.sin(az) * math.cos(el),
                math.sin(el),
                math.cos(az) * math.cos(el),
            ]
        )


def build_array(
    rows: int,
    cols: int,
    spacing_row: float = 0.5,
    spacing_col: float = 0.5,
    element_model: str = "cosine_q",
    element_q: float = 1.0,
) -> ArrayGeometry:
    """Construct a validated rectangular array geometry."""
    return ArrayGeometry(
        rows=rows,
        cols=cols,
        spacing_row=spacing_row,
        spacing_col=spacing_col,
        element_model=element_model,
        element_q=element_q,
    )


def default_module() -> ArrayGeometry:
    """The 2 x 10 half-wavelength module used throughout the presets."""
    return ArrayGeometry(rows=2, cols=10)


def array_factor(geometry, steering, theta_deg, phi_deg):
    """Coherent element sum toward (theta, phi) under conjugate steering.

    Accepts scalars or broadcastable arrays of angles in degrees and
    returns the complex array factor. The magnitude is bounded by the
    element count, with equality exactly at the steered direction.
    """
    theta = np.radians(np.asarray(theta_deg, dtype=float))
    phi = np.radians(np.asarray(phi_deg, dtype=float))
    st = np.sin(theta)
    u = st * np.cos(phi)
    v = st * np.sin(phi)
    u0, v0 = steering.direction_cosines()
    x, y = geometry.element_positions()
    # rectangular lattice: the 2-D sum factors into column and row sums
    shape = np.broadcast(u, v).shape
    du = (u - u0)[..., np.newaxis]
    dv = (v - v0)[..., np.newaxis]
    af_x = np.exp(2j * np.pi * x * du).sum(axis=-1)
    af_y = np.exp(2j * np.pi * y * dv).sum(axis=-1)
    af = af_x * af_y
    if shape == ():
        return complex(af)
    return af


def element_field(geometry, theta_deg):
    """Real element amplitude toward polar angle theta.

    The isotropic model returns 1 everywhere. The cosine model returns
    cos(theta) ** q over the forward hemisphere and exactly 0 behind
    the array plane, mimicking a patch element over a ground plane.
    """
    theta = np.radians(np.asarray(theta_deg, dtype=float))
    if geometry.element_model == "isotropic":
        return np.ones_like(theta) if theta.shape else 1.0
    ct = np.cos(theta)
    amp = np.where(ct > 0.0, np.power(np.clip(ct, 0.0, None), geometry.element_q), 0.0)
    if theta.shape == ():
        return float(amp)
    return amp


def field_toward(geometry, steering, theta_deg, phi_deg):
    """Complex (e_theta, e_phi) field toward arbitrary directions.

    Analytic evaluation, no grid involved; the co-polarized component
    carries everything and e_phi is identically zero.
    """
    e_theta = element_field(geometry, theta_deg) * array_factor(
        geometry, steering, theta_deg, phi_deg
    )
    e_phi = np.zeros_like(np.asarray(e_theta))
    if np.asarray(e_theta).shape == ():
        return complex(e_theta), 0j
    return e_theta, e_phi


def _check_resolution(resolution_deg: float) -> tuple[int, int]:
    if resolution_deg <= 0.0:
        raise InvalidResolutionError(
            f"resolution must be positive, got {resolution_deg}"
        )
    n_theta = 180.0 / resolution_deg
    n_phi = 360.0 / resolution_deg
    if (
        abs(n_theta - round(n_theta)) > 1e-9 * max(1.0, n_theta)
        or abs(n_phi - round(n_phi)) > 1e-9 * max(1.0, n_phi)
    ):
        raise InvalidResolutionError(
            f"resolution {resolution_deg} deg does not divide the sphere "
            "into a whole number of cells"
        )
    return int(round(n_theta)), int(round(n_phi))


@dataclass(frozen=True, eq=False)
class RadiationPattern:
    """Complex far-field samples on a regular (theta, phi) grid.

    theta_deg holds cell midpoints covering (0, 180); phi_deg holds
    nodes covering [0, 360). Fields are (n_theta, n_phi) complex arrays
    for the two spherical polarization components.
    """

    theta_deg: np.ndarray
    phi_deg: np.ndarray
    e_theta: np.ndarray
    e_phi: np.ndarray
    frequency_ghz: float = 60.0

    def __post_init__(self):
        expect = (self.theta_deg.size, self.phi_deg.size)
        if self.e_theta.shape != expect or self.e_phi.shape != expect:
            raise InvalidGeometryError(
                f"field shape {self.e_theta.shape} does not match grid {expect}"
            )
        for arr in (self.theta_deg, self.phi_deg, self.e_theta, self.e_phi):
            arr.setflags(write=False)

    @property
    def resolution_deg(self) -> float:
        return 180.0 / self.theta_deg.size

    def same_grid(self, other) -> bool:
        return (
            self.theta_deg.size == other.theta_deg.size
            and self.phi_deg.size == other.phi_deg.size
            and np.allclose(self.theta_deg, other.theta_deg, atol=1e-9)
            and np.allclose(self.phi_deg, other.phi_deg, atol=1e-9)
        )

    def solid_angle_weights(self) -> np.ndarray:
        """Per-cell sin(theta) dtheta dphi quadrature weights."""
        res = math.radians(self.resolution_deg)
        res_phi = 2.0 * math.pi / self.phi_deg.size
        w_theta = np.sin(np.radians(self.theta_deg)) * res
        return np.broadcast_to(
            (w_theta * res_phi)[:, np.newaxis],
            (self.theta_deg.size, self.phi_deg.size),
        )

    def power_density(self) -> np.ndarray:
        return np.abs(self.e_theta) ** 2 + np.abs(self.e_phi) ** 2

    def total_radiated_power(self) -> float:
        return float(np.sum(self.solid_angle_weights() * self.power_density()))


@lru_cache(maxsize=32)
def synthesize_pattern(
    geometry: ArrayGeometry,
    steering: Steering = Steering(),
    resolution_deg: float = 1.0,
    frequency_ghz: float = 60.0,
) -> RadiationPattern:
    """Sample the full-sphere pattern of a steered array.

    Cached: geometries and steerings are small frozen dataclasses and
    the returned pattern arrays are read-only, so sharing is safe.
    """
    n_theta, n_phi = _check_resolution(resolution_deg)
    theta = (np.arange(n_theta) + 0.5) * resolution_deg
    phi = np.arange(n_phi) * (360.0 / n_phi)
    af = array_factor(
        geometry, steering, theta[:, np.newaxis], phi[np.newaxis, :]
    )
    elem = element_field(geometry, theta)[:, np.newaxis]
    e_theta = elem * af
    e_phi = np.zeros_like(e_theta)
    return RadiationPattern(
        theta_deg=theta,
        phi_deg=phi,
        e_theta=e_theta,
        e_phi=e_phi,
        frequency_ghz=frequency_ghz,
    )


def directivity_linear(pattern: RadiationPattern) -> np.ndarray:
    """Directivity 4 pi U / P_rad at every grid sample."""
    total = pattern.total_radiated_power()
    if total <= 0.0:
        raise DegeneratePatternError(
            "pattern radiates zero total power; directivity undefined"
        )
    return 4.0 * math.pi * pattern.power_density() / total


def directivity_dbi(pattern: RadiationPattern) -> np.ndarray:
    with np.errstate(divide="ignore"):
        return 10.0 * np.log10(directivity_linear(pattern))


def peak_directivity_dbi(pattern: RadiationPattern) -> float:
    return float(np.max(directivity_dbi(pattern)))


def peak_direction_deg(pattern: RadiationPattern) -> tuple[float, float]:
    """(theta, phi) of the strongest grid sample."""
    i, j = np.unravel_index(
        int(np.argmax(pattern.power_density())),
        pattern.power_density().shape,
    )
    return float(pattern.theta_deg[i]), float(pattern.phi_deg[j])


def eirp_dbm(pattern: RadiationPattern, tx_power_dbm: float) -> float:
    """Radiated-peak EIRP for a given conducted power."""
    return tx_power_dbm + peak_directivity_dbi(pattern)


def _phi_column(pattern: RadiationPattern, phi_deg: float) -> int:
    hits = np.nonzero(np.isclose(pattern.phi_deg, phi_deg % 360.0, atol=1e-9))[0]
    if hits.size != 1:
        raise InvalidResolutionError(
            f"pattern grid has no phi = {phi_deg} column; "
            "principal-plane cuts need a resolution that lands on it"
        )
    return int(hits[0])


def principal_cut(pattern: RadiationPattern, plane: str):
    """Signed-angle power cut through one principal plane.

    plane "azimuth" walks the phi = 0 / 180 half-planes, "elevation"
    the phi = 90 / 270 pair. Returns (angles_deg, power) sorted by
    angle, where negative angles come from the back half-plane.
    """
    if plane == "azimuth":
        fwd, bwd = 0.0, 180.0
    elif plane == "elevation":
        fwd, bwd = 90.0, 270.0
    else:
        raise ValueError(f"plane must be 'azimuth' or 'elevation', got {plane!r}")
    power = pattern.power_density()
    jf = _phi_column(pattern, fwd)
    jb = _phi_column(pattern, bwd)
    angles = np.concatenate([-pattern.theta_deg[::-1], pattern.theta_deg])
    values = np.concatenate([power[::-1, jb], power[:, jf]])
    return angles, values


def _interp_crossing(a0, p0, a1, p1, target):
    # linear interpolation of power between two adjacent cut samples
    if p1 == p0:
        return a1
    return a0 + (target - p0) * (a1 - a0) / (p1 - p0)


def _circular_crossing(angles, power, k, half, direction):
    # walk the closed cut from sample k until power drops through half,
    # unwrapping angles across the +/-180 seam; None after a full lap
    n = len(power)
    prev_angle = float(angles[k])
    prev_power = float(power[k])
    for step in range(1, n):
        j = (k + direction * step) % n
        delta = float(angles[j]) - (float(angles[(k + direction * (step - 1)) % n]))
        if direction > 0 and delta < 0.0:
            delta += 360.0
        elif direction < 0 and delta > 0.0:
            delta -= 360.0
        cur_angle = prev_angle + delta
        cur_power = float(power[j])
        if cur_power <= half:
            return _interp_crossing(prev_angle, prev_power, cur_angle, cur_power, half)
        prev_angle, prev_power = cur_angle, cur_power
    return None


def hpbw_deg(pattern: RadiationPattern, plane: str = "azimuth") -> float:
    """Half-power beamwidth of a principal-plane cut.

    The cut is a closed great circle, so the walk away from the peak is
    circular; a beam straddling the +/-180 seam still measures. The cut
    peak sets the 3 dB reference and crossings are interpolated
    linearly in power between grid samples.
    """
    angles, power = principal_cut(pattern, plane)
    k = int(np.argmax(power))
    peak = power[k]
    if peak <= 0.0:
        raise DegeneratePatternError("cut has zero peak power")
    half = 0.5 * peak

    left = _circular_crossing(angles, power, k, half, direction=-1)
    right = _circular_crossing(angles, power, k, half, direction=+1)
    if left is None or right is None:
        raise NoBeamwidthError(
            f"{plane} cut never crosses the half-power level on both sides"
        )
    return float(right - left)


def realized_gain_dbi(
    geometry: ArrayGeometry,
    steering: Steering,
    theta_deg: float,
    phi_deg: float,
    resolution_deg: float = 1.0,
) -> float:
    """Directivity of the steered pattern toward one exact direction.

    The field is evaluated analytically at (theta, phi); only the total
    radiated power normalization comes from the sampled grid.
    """
    e_theta, e_phi = field_toward(geometry, steering, theta_deg, phi_deg)
    density = abs(e_theta) ** 2 + abs(e_phi) ** 2
    total = synthesize_pattern(
        geometry, steering, resolution_deg
    ).total_radiated_power()
    if total <= 0.0:
        raise DegeneratePatternError(
            "pattern radiates zero total power; gain undefined"
        )
    if density <= 0.0:
        return -math.inf
    return 10.0 * math.log10(4.0 * math.pi * density / total)


def boresight_peak_dbi(
    geometry: ArrayGeometry, resolution_deg: float = 1.0
) -> float:
    """Peak directivity of the unsteered pattern."""
    return peak_directivity_dbi(synthesize_pattern(geometry, Steering(), resolution_deg))
