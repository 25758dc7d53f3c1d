"""Link-level simulator for distributed millimeter-wave phased arrays.

Submodules build on each other in one direction: arrays synthesizes
far-field patterns, correlation compares them, channel supplies path
loss and shadowing, link turns powers into rates, and deployment wires
everything into multi-user scenarios. The cli module exposes the same
flows as subcommands.
"""

from .arrays import (
    ELEMENT_MODELS,
    Q_FOR_13_DBI,
    ArrayGeometry,
    RadiationPattern,
    Steering,
    array_factor,
    boresight_peak_dbi,
    build_array,
    default_module,
    directivity_dbi,
    directivity_linear,
    eirp_dbm,
    element_field,
    field_toward,
    hpbw_deg,
    peak_direction_deg,
    peak_directivity_dbi,
    principal_cut,
    realized_gain_dbi,
    synthesize_pattern,
)
from .channel import (
    ChannelScenario,
    channel_preset,
    housing_attenuation_db,
    path_loss_db,
    shadow_sample_db,
)
from .correlation import apply_displacement, ecc, rotate_polarization
from .deployment import (
    BeamSteering,
    LayoutReport,
    Mount,
    MuScenario,
    PlacedModule,
    ScenarioResult,
    StreamResult,
    SweepPoint,
    UavPose,
    beta_deg,
    default_mounts,
    evaluate_scenario,
    point_beams,
    reference_ue_layout,
    slant_distance_m,
    sweep_distance,
    validate_ue_layout,
)
from .errors import (
    ConfigurationError,
    DegeneratePatternError,
    GridMismatchError,
    InvalidConfigError,
    InvalidGeometryError,
    InvalidResolutionError,
    NoBeamwidthError,
    NumericalDegeneracyError,
    OutOfModelRangeError,
    SimulationError,
    UndefinedProjectionError,
)
from .link import (
    LinkConfig,
    RateTable,
    StreamBudget,
    aggregate_rate_gbps,
    link_preset,
    noise_power_dbm,
    rate_from_sinr_gbps,
    rate_table_preset,
    received_power_dbm,
    resolve_rx_gain,
    shannon_rate_gbps,
    sinr_db,
    stream_rate_gbps,
)
from .pattern_io import read_pattern_csv, write_pattern_csv

__version__ = "0.1.0"
