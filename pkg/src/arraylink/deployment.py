"""Multi-user deployments: an aerial base station serving ground users.

World frame: x and y span flat ground, z points up. The platform
hovers at (0, 0, h); its nadir is the origin and users are 2-D ground
coordinates. Each antenna module hangs on a mount described by a yaw
around +z (0 along +x) and a downtilt from horizontal, and steers its
beam inside the mount frame. Stream k runs from mount k to user k.

Also here: placement checks for the handheld multi-module layout,
which wants opposing module pairs far enough apart (in wavelengths)
for pattern-level decorrelation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .arrays import (
    ArrayGeometry,
    Steering,
    boresight_peak_dbi,
    default_module,
    realized_gain_dbi,
)
from .channel import (
    ChannelScenario,
    channel_preset,
    path_loss_db,
    shadow_sample_db,
)
from .errors import (
    InvalidConfigError,
    OutOfModelRangeError,
    UndefinedProjectionError,
)
from .link import (
    LinkConfig,
    StreamBudget,
    aggregate_rate_gbps,
    link_preset,
    noise_power_dbm,
    received_power_dbm,
    resolve_rx_gain,
    sinr_db,
    stream_rate_gbps,
)


@dataclass(frozen=True)
class Mount:
    """Module orientation: yaw about +z, then downtilt from horizontal."""

    yaw_deg: float
    downtilt_deg: float = 45.0

    def axes(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Mount frame (x_m, y_m, boresight) in world coordinates.

        x_m stays horizontal (the long, narrow-beam axis of the
        module), y_m tilts with the boresight, and boresight points
        downtilt degrees below the yaw heading.
        """
        psi = math.radians(self.yaw_deg)
        tau = math.radians(self.downtilt_deg)
        x_m = np.array([-math.sin(psi), math.cos(psi), 0.0])
        y_m = np.array(
            [math.sin(tau) * math.cos(psi), math.sin(tau) * math.sin(psi), math.cos(tau)]
        )
        boresight = np.array(
            [math.cos(tau) * math.cos(psi), math.cos(tau) * math.sin(psi), -math.sin(tau)]
        )
        return x_m, y_m, boresight

    def to_mount_frame(self, v_world: np.ndarray) -> np.ndarray:
        x_m, y_m, boresight = self.axes()
        return np.array(
            [float(v_world @ x_m), float(v_world @ y_m), float(v_world @ boresight)]
        )


def default_mounts() -> tuple[Mount, Mount]:
    """Two modules on opposite 45-degree yaws, both tilted 45 down."""
    return (Mount(yaw_deg=45.0), Mount(yaw_deg=-45.0))


@dataclass(frozen=True)
class UavPose:
    """Hover position plus the reference ground offset of the cell."""

    height_m: float = 35.0
    ground_offset_m: float = 22.0
    mounts: tuple[Mount, ...] = field(default_factory=default_mounts)

    def __post_init__(self):
        object.__setattr__(self, "mounts", tuple(self.mounts))
        if self.height_m <= 0.0:
            raise InvalidConfigError(
                f"platform height must be positive, got {self.height_m}"
            )
        if self.ground_offset_m < 0.0:
            raise InvalidConfigError(
                f"ground offset must be >= 0, got {self.ground_offset_m}"
            )
        if not self.mounts:
            raise InvalidConfigError("a platform needs at least one mount")

    @property
    def position(self) -> np.ndarray:
        return np.array([0.0, 0.0, self.height_m])

    @property
    def reference_slant_m(self) -> float:
        """Slant range to a user at the reference ground offset."""
        return math.hypot(self.height_m, self.ground_offset_m)


def slant_distance_m(pose: UavPose, user_xy) -> float:
    x, y = (float(v) for v in user_xy)
    return math.sqrt(pose.height_m**2 + x * x + y * y)


def beta_deg(pose: UavPose, user_a_xy, user_b_xy) -> float:
    """Ground-plane angle at nadir between two users' bearings."""
    ax, ay = (float(v) for v in user_a_xy)
    bx, by = (float(v) for v in user_b_xy)
    norm_a = math.hypot(ax, ay)
    norm_b = math.hypot(bx, by)
    if norm_a == 0.0 or norm_b == 0.0:
        raise UndefinedProjectionError(
            "a user at the nadir point has no ground bearing"
        )
    # atan2 of cross and dot stays accurate near 0 and 180 degrees,
    # where acos of a rounded cosine loses half the digits
    cross = ax * by - ay * bx
    dot = ax * bx + ay * by
    return math.degrees(math.atan2(abs(cross), dot))


@dataclass(frozen=True)
class BeamSteering:
    """Steering a mount actually applies, with the unclamped request."""

    steering: Steering
    requested_az_deg: float
    requested_el_deg: float
    clamped: bool


@dataclass(frozen=True)
class MuScenario:
    """One aerial deployment snapshot ready for evaluation."""

    pose: UavPose
    users: tuple[tuple[float, float], ...]
    array: ArrayGeometry = field(default_factory=default_module)
    channel: ChannelScenario = field(default_factory=lambda: channel_preset("a2g-los"))
    link: LinkConfig | None = None
    interference: bool = True
    housing_db: float = 0.0
    resolution_deg: float = 1.0

    def __post_init__(self):
        object.__setattr__(
            self,
            "users",
            tuple((float(x), float(y)) for x, y in self.users),
        )
        if not self.users:
            raise InvalidConfigError("scenario needs at least one user")
        if len(self.users) > len(self.pose.mounts):
            raise InvalidConfigError(
                f"{len(self.users)} users exceed the {len(self.pose.mounts)} "
                "available mounts; stream k needs mount k"
            )
        if self.housing_db < 0.0:
            raise InvalidConfigError(
                f"housing loss must be >= 0 dB, got {self.housing_db}"
            )


def point_beams(scenario: MuScenario) -> list[BeamSteering]:
    """Aim mount k's beam at user k, clamping to the steering limits."""
    out = []
    for mount, user in zip(scenario.pose.mounts, scenario.users):
        target = np.array([user[0], user[1], 0.0]) - scenario.pose.position
        t_m = mount.to_mount_frame(target / np.linalg.norm(target))
        el = math.degrees(math.asin(min(1.0, max(-1.0, t_m[1]))))
        az = math.degrees(math.atan2(t_m[0], t_m[2]))
        lim_az = scenario.array.steer_limit_az_deg
        lim_el = scenario.array.steer_limit_el_deg
        az_c = min(lim_az, max(-lim_az, az))
        el_c = min(lim_el, max(-lim_el, el))
        out.append(
            BeamSteering(
                steering=Steering(azimuth_deg=az_c, elevation_deg=el_c),
                requested_az_deg=az,
                requested_el_deg=el,
                clamped=(az_c != az or el_c != el),
            )
        )
    return out


def _mount_frame_angles(mount: Mount, pose: UavPose, user_xy) -> tuple[float, float]:
    """Pattern (theta, phi) of the direction mount -> user."""
    target = np.array([user_xy[0], user_xy[1], 0.0]) - pose.position
    t_m = mount.to_mount_frame(target / np.linalg.norm(target))
    theta = math.degrees(math.acos(min(1.0, max(-1.0, t_m[2]))))
    phi = math.degrees(math.atan2(t_m[1], t_m[0])) % 360.0
    return theta, phi


@dataclass(frozen=True)
class StreamResult:
    """Budget and outcome for one mount-to-user stream."""

    index: int
    user_xy: tuple[float, float]
    slant_m: float
    steering: Steering
    steering_clamped: bool
    path_loss_db: float
    shadow_db: float
    signal_dbm: float
    interference_dbm: tuple[float, ...]
    noise_dbm: float
    snr_db: float
    sinr_db: float
    rate_gbps: float


@dataclass(frozen=True)
class ScenarioResult:
    streams: tuple[StreamResult, ...]
    aggregate_gbps: float
    beta_deg: float | None
    reference_slant_m: float


def _steering_pattern_angles(steering: Steering) -> tuple[float, float]:
    """Pattern (theta, phi) of a steering command's pointing direction."""
    u = steering.unit_vector()
    theta = math.degrees(math.acos(min(1.0, max(-1.0, float(u[2])))))
    phi = math.degrees(math.atan2(float(u[1]), float(u[0]))) % 360.0
    return theta, phi


def evaluate_scenario(
    scenario: MuScenario, fading: str = "median", seed: int = 0
) -> ScenarioResult:
    """Run every stream's budget and sum the deployment throughput.

    Each beam's conducted power is set so the configured EIRP is met
    along its commanded steering direction; an unclamped beam therefore
    delivers exactly the budget EIRP to its own user while other users
    see it attenuated by the pattern roll-off between their direction
    and the steered one. Interference from beam i at user j rides user
    j's own path loss and fade. With scenario.interference False the
    streams are treated as perfectly isolated at the receiver and SINR
    equals SNR.
    """
    geometry = scenario.array
    peak_dbi = boresight_peak_dbi(geometry, scenario.resolution_deg)
    link = resolve_rx_gain(
        scenario.link if scenario.link is not None else _default_uav_link(),
        peak_dbi,
    )
    noise_dbm = noise_power_dbm(link.bandwidth_hz, link.noise_figure_db)
    beams = point_beams(scenario)
    n = len(scenario.users)

    # per-beam conducted power referenced to the commanded direction
    tx_dbm = np.empty(n)
    gain = np.empty((n, n))
    for i, beam in enumerate(beams[:n]):
        mount = scenario.pose.mounts[i]
        theta_s, phi_s = _steering_pattern_angles(beam.steering)
        tx_dbm[i] = link.eirp_dbm - realized_gain_dbi(
            geometry, beam.steering, theta_s, phi_s, scenario.resolution_deg
        )
        for j, user in enumerate(scenario.users):
            theta, phi = _mount_frame_angles(mount, scenario.pose, user)
            gain[i, j] = realized_gain_dbi(
                geometry, beam.steering, theta, phi, scenario.resolution_deg
            )

    streams = []
    rates = []
    for j, user in enumerate(scenario.users):
        slant = slant_distance_m(pose=scenario.pose, user_xy=user)
        pl = path_loss_db(scenario.channel, slant)
        shadow = shadow_sample_db(scenario.channel, seed, j, mode=fading)
        loss = pl + shadow + scenario.housing_db + link.fade_margin_db
        signal = tx_dbm[j] + gain[j, j] + link.rx_gain_dbi - loss
        interference = tuple(
            tx_dbm[i] + gain[i, j] + link.rx_gain_dbi - loss
            for i in range(n)
            if i != j and scenario.interference
        )
        budget = StreamBudget(
            signal_dbm=signal,
            interference_dbm=interference,
            noise_dbm=noise_dbm,
        )
        snr = signal - noise_dbm
        sinr = sinr_db(budget)
        rate = stream_rate_gbps(sinr, link)
        rates.append(rate)
        streams.append(
            StreamResult(
                index=j,
                user_xy=user,
                slant_m=slant,
                steering=beams[j].steering,
                steering_clamped=beams[j].clamped,
                path_loss_db=pl,
                shadow_db=shadow,
                signal_dbm=signal,
                interference_dbm=interference,
                noise_dbm=noise_dbm,
                snr_db=snr,
                sinr_db=sinr,
                rate_gbps=rate,
            )
        )

    beta = None
    if len(scenario.users) == 2:
        try:
            beta = beta_deg(scenario.pose, scenario.users[0], scenario.users[1])
        except UndefinedProjectionError:
            beta = None
    return ScenarioResult(
        streams=tuple(streams),
        aggregate_gbps=aggregate_rate_gbps(rates),
        beta_deg=beta,
        reference_slant_m=scenario.pose.reference_slant_m,
    )


def _default_uav_link() -> LinkConfig:
    return link_preset("uav-abs")


@dataclass(frozen=True)
class SweepPoint:
    d_m: float
    pl_db: float
    snr_db: float
    stream_rate_gbps: float
    aggregate_gbps: float


def sweep_distance(
    array: ArrayGeometry,
    channel: ChannelScenario,
    link: LinkConfig,
    n_streams: int,
    d_min_m: float,
    d_max_m: float,
    step_m: float,
    fading: str = "median",
    seed: int = 0,
    housing_db: float = 0.0,
    resolution_deg: float = 1.0,
) -> list[SweepPoint]:
    """Boresight-aligned rate-vs-distance sweep for n parallel streams.

    Streams are assumed interference-free (each module's beam aligned
    with its own user); aggregate is n_streams times the stream rate
    at the common distance. Stochastic fades draw one sample per
    distance index, shared by the co-located streams.
    """
    if n_streams < 1:
        raise InvalidConfigError(f"n_streams must be >= 1, got {n_streams}")
    if step_m <= 0.0:
        raise InvalidConfigError(f"sweep step must be positive, got {step_m}")
    if d_min_m > d_max_m:
        raise InvalidConfigError(
            f"sweep range is empty: d_min {d_min_m} > d_max {d_max_m}"
        )
    if d_min_m < 1.0:
        raise OutOfModelRangeError(
            "sweep starts inside the 1 m close-in reference distance"
        )
    peak_dbi = boresight_peak_dbi(array, resolution_deg)
    link = resolve_rx_gain(link, peak_dbi)
    noise_dbm = noise_power_dbm(link.bandwidth_hz, link.noise_figure_db)

    points = []
    n_points = int(math.floor((d_max_m - d_min_m) / step_m + 1e-9)) + 1
    for k in range(n_points):
        d = d_min_m + k * step_m
        pl = path_loss_db(channel, d)
        shadow = shadow_sample_db(channel, seed, k, mode=fading)
        signal = received_power_dbm(link, pl, shadow + housing_db)
        snr = signal - noise_dbm
        rate = stream_rate_gbps(snr, link)
        points.append(
            SweepPoint(
                d_m=d,
                pl_db=pl,
                snr_db=snr,
                stream_rate_gbps=rate,
                aggregate_gbps=aggregate_rate_gbps([rate] * n_streams),
            )
        )
    return points


# Handheld layout rules, all lengths in millimeters. A module is a
# 2 x 10 half-wavelength lattice plus feed, about 25 x 9 mm at 60 GHz,
# where the free-space wavelength is 5 mm to three figures.
MODULE_LENGTH_MM = 25.0
MODULE_WIDTH_MM = 9.0
NOMINAL_WAVELENGTH_MM = 5.0

# opposing-pair spacing wanted for decorrelation: the long-edge pair
# aims for four wavelengths (small tolerance admits the realizable
# 19.9 mm), the short-edge pair for anything beyond two
TOP_PAIR_MIN_WAVELENGTHS = 4.0
TOP_PAIR_TOLERANCE_WAVELENGTHS = 0.05
SIDE_PAIR_MIN_WAVELENGTHS = 2.0


@dataclass(frozen=True)
class PlacedModule:
    """Axis-aligned module footprint: center plus long-axis direction."""

    center_xy_mm: tuple[float, float]
    long_axis: str  # "x" or "y"

    def __post_init__(self):
        if self.long_axis not in ("x", "y"):
            raise InvalidConfigError(
                f"long_axis must be 'x' or 'y', got {self.long_axis!r}"
            )

    def half_extent(self) -> tuple[float, float]:
        if self.long_axis == "x":
            return MODULE_LENGTH_MM / 2.0, MODULE_WIDTH_MM / 2.0
        return MODULE_WIDTH_MM / 2.0, MODULE_LENGTH_MM / 2.0


@dataclass(frozen=True)
class RuleCheck:
    rule: str
    passed: bool
    measured: float
    required: float
    units: str

    @property
    def margin(self) -> float:
        return self.measured - self.required


@dataclass(frozen=True)
class LayoutReport:
    checks: tuple[RuleCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _edge_gap_mm(a: PlacedModule, b: PlacedModule, axis: int) -> float:
    ha = a.half_extent()[axis]
    hb = b.half_extent()[axis]
    return abs(a.center_xy_mm[axis] - b.center_xy_mm[axis]) - ha - hb


def validate_ue_layout(
    top_pair: tuple[PlacedModule, PlacedModule],
    side_pair: tuple[PlacedModule, PlacedModule],
    wavelength_mm: float = NOMINAL_WAVELENGTH_MM,
) -> LayoutReport:
    """Check a four-module handheld placement against spacing rules.

    The top pair are the long-axis-parallel modules separated along x;
    the side pair are rotated 90 degrees and separated along y. The
    report carries measured values and margins rather than raising, so
    borderline layouts stay inspectable.
    """
    if not math.isfinite(wavelength_mm) or wavelength_mm <= 0.0:
        raise InvalidConfigError("wavelength_mm must be positive and finite")
    wl = wavelength_mm
    checks = []

    gap_top = _edge_gap_mm(top_pair[0], top_pair[1], axis=0)
    required_top = (TOP_PAIR_MIN_WAVELENGTHS - TOP_PAIR_TOLERANCE_WAVELENGTHS) * wl
    checks.append(
        RuleCheck(
            rule="top pair edge gap along x of at least four wavelengths "
            "(within tolerance)",
            passed=gap_top >= required_top,
            measured=gap_top,
            required=required_top,
            units="mm",
        )
    )

    gap_side = _edge_gap_mm(side_pair[0], side_pair[1], axis=1)
    required_side = SIDE_PAIR_MIN_WAVELENGTHS * wl
    checks.append(
        RuleCheck(
            rule="side pair edge gap along y of more than two wavelengths",
            passed=gap_side > required_side,
            measured=gap_side,
            required=required_side,
            units="mm",
        )
    )

    same_top = top_pair[0].long_axis == top_pair[1].long_axis
    same_side = side_pair[0].long_axis == side_pair[1].long_axis
    perpendicular = same_top and same_side and (
        top_pair[0].long_axis != side_pair[0].long_axis
    )
    checks.append(
        RuleCheck(
            rule="pairs oriented mutually perpendicular",
            passed=perpendicular,
            measured=1.0 if perpendicular else 0.0,
            required=1.0,
            units="bool",
        )
    )
    return LayoutReport(checks=tuple(checks))


def reference_ue_layout() -> tuple[
    tuple[PlacedModule, PlacedModule], tuple[PlacedModule, PlacedModule]
]:
    """The measured handheld placement: 19.9 mm top gap, 11 mm side gap."""
    top = (
        PlacedModule(center_xy_mm=(-22.45, 60.0), long_axis="x"),
        PlacedModule(center_xy_mm=(22.45, 60.0), long_axis="x"),
    )
    side = (
        PlacedModule(center_xy_mm=(0.0, 18.0), long_axis="y"),
        PlacedModule(center_xy_mm=(0.0, -18.0), long_axis="y"),
    )
    return top, side
