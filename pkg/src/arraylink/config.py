"""JSON config ingestion: schema validation, presets, and builders.

Each CLI subcommand validates its config against a JSON schema before
touching any numbers, so malformed input fails fast with field-level
diagnostics. Builders return both the domain object and a canonical
fully-resolved form of the block; the canonical form validates against
the same schema and resolves to itself, which is what lets a summary's
echoed config reproduce the run that produced it.
"""

from __future__ import annotations

import json

import jsonschema

from .arrays import ArrayGeometry, Steering
from .channel import (
    ChannelScenario,
    channel_preset,
    housing_attenuation_db,
)
from .deployment import Mount, MuScenario, UavPose, default_mounts
from .errors import InvalidConfigError
from .link import LinkConfig, RateTable, link_preset

_POSITIVE = {"type": "number", "exclusiveMinimum": 0}
_NON_NEGATIVE = {"type": "number", "minimum": 0}

ARRAY_BLOCK = {
    "type": "object",
    "properties": {
        "rows": {"type": "integer", "minimum": 1},
        "cols": {"type": "integer", "minimum": 1},
        "spacing_row": _POSITIVE,
        "spacing_col": _POSITIVE,
        "element_model": {"enum": ["isotropic", "cosine_q"]},
        "element_q": _NON_NEGATIVE,
    },
    "additionalProperties": False,
}

STEERING_BLOCK = {
    "type": "object",
    "properties": {
        "azimuth_deg": {"type": "number", "minimum": -90, "maximum": 90},
        "elevation_deg": {"type": "number", "minimum": -90, "maximum": 90},
    },
    "additionalProperties": False,
}

HOUSING_BLOCK = {
    "oneOf": [
        {"enum": ["none", "glass", "ceramic", "metal_alloy"]},
        {
            "type": "object",
            "properties": {
                "material": {"type": "string"},
                "attenuation_db": _NON_NEGATIVE,
            },
            "required": ["material"],
            "additionalProperties": False,
        },
    ]
}

CHANNEL_BLOCK = {
    "type": "object",
    "properties": {
        "preset": {"type": "string"},
        "custom": {
            "type": "object",
            "properties": {
                "name": {"type": "string"},
                "ple_n": _POSITIVE,
                "sf_sigma_db": _NON_NEGATIVE,
            },
            "required": ["ple_n", "sf_sigma_db"],
            "additionalProperties": False,
        },
        "frequency_ghz": _POSITIVE,
        "housing": HOUSING_BLOCK,
    },
    "oneOf": [{"required": ["preset"]}, {"required": ["custom"]}],
    "additionalProperties": False,
}

RATE_TABLE_BLOCK = {
    "type": "object",
    "properties": {
        "thresholds_db": {
            "type": "array",
            "items": {"type": "number"},
            "minItems": 1,
        },
        "rates_gbps": {
            "type": "array",
            "items": _NON_NEGATIVE,
            "minItems": 1,
        },
    },
    "required": ["thresholds_db", "rates_gbps"],
    "additionalProperties": False,
}

LINK_BLOCK = {
    "type": "object",
    "properties": {
        "preset": {"type": "string"},
        "custom": {
            "type": "object",
            "properties": {
                "eirp_dbm": {"type": "number"},
                "rate_table": RATE_TABLE_BLOCK,
                "rx_gain_dbi": {"type": ["number", "null"]},
                "bandwidth_hz": _POSITIVE,
                "noise_figure_db": {"type": "number"},
                "implementation_efficiency": {
                    "type": "number",
                    "exclusiveMinimum": 0,
                    "maximum": 1,
                },
                "fade_margin_db": _NON_NEGATIVE,
                "rate_mode": {"enum": ["table", "shannon"]},
            },
            "required": ["eirp_dbm", "rate_table"],
            "additionalProperties": False,
        },
    },
    "oneOf": [{"required": ["preset"]}, {"required": ["custom"]}],
    "additionalProperties": False,
}

MOUNT_BLOCK = {
    "type": "object",
    "properties": {
        "yaw_deg": {"type": "number"},
        "downtilt_deg": {"type": "number", "minimum": -90, "maximum": 90},
    },
    "required": ["yaw_deg"],
    "additionalProperties": False,
}

UAV_BLOCK = {
    "type": "object",
    "properties": {
        "h": _POSITIVE,
        "d0": _NON_NEGATIVE,
        "mounts": {"type": "array", "items": MOUNT_BLOCK, "minItems": 1},
    },
    "additionalProperties": False,
}

USERS_BLOCK = {
    "type": "array",
    "items": {
        "type": "array",
        "items": {"type": "number"},
        "minItems": 2,
        "maxItems": 2,
    },
    "minItems": 1,
}

SWEEP_BLOCK = {
    "type": "object",
    "properties": {
        "d_min": {"type": "number"},
        "d_max": {"type": "number"},
        "step": _POSITIVE,
        "n_streams": {"type": "integer", "minimum": 1},
    },
    "required": ["d_min", "d_max", "step"],
    "additionalProperties": False,
}

# one schema covers both budget-driven commands; sweep reads the sweep
# block, scenario reads uav/users, and either may carry the other's
# blocks without harm
SCENARIO_SCHEMA = {
    "type": "object",
    "properties": {
        "array": ARRAY_BLOCK,
        "channel": CHANNEL_BLOCK,
        "link": LINK_BLOCK,
        "uav": UAV_BLOCK,
        "users": USERS_BLOCK,
        "interference": {"type": "boolean"},
        "sweep": SWEEP_BLOCK,
    },
    "additionalProperties": False,
}

PATTERN_SCHEMA = {
    "type": "object",
    "properties": {
        "array": ARRAY_BLOCK,
        "steering": STEERING_BLOCK,
        "frequency_ghz": _POSITIVE,
    },
    "additionalProperties": False,
}

ECC_SCHEMA = {
    "type": "object",
    "properties": {
        "pattern_a": {"type": "string"},
        "pattern_b": {"type": "string"},
        "displacement_a": {
            "type": "array",
            "items": {"type": "number"},
            "minItems": 3,
            "maxItems": 3,
        },
        "displacement_b": {
            "type": "array",
            "items": {"type": "number"},
            "minItems": 3,
            "maxItems": 3,
        },
        "frequency_ghz": _POSITIVE,
    },
    "required": ["pattern_a", "pattern_b"],
    "additionalProperties": False,
}

PATHLOSS_SCHEMA = {
    "type": "object",
    "properties": {
        "channel": CHANNEL_BLOCK,
        "distance_m": _POSITIVE,
    },
    "required": ["channel", "distance_m"],
    "additionalProperties": False,
}

COMMAND_SCHEMAS = {
    "pattern": PATTERN_SCHEMA,
    "ecc": ECC_SCHEMA,
    "pathloss": PATHLOSS_SCHEMA,
    "sweep": SCENARIO_SCHEMA,
    "scenario": SCENARIO_SCHEMA,
}


def load_config(path) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except FileNotFoundError:
        raise InvalidConfigError(f"config file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise InvalidConfigError(
            f"{path} is not valid JSON: {exc}",
            field_errors=[(f"line {exc.lineno}", exc.msg)],
        ) from None
    if not isinstance(data, dict):
        raise InvalidConfigError(f"{path}: top-level config must be an object")
    return data


def validate_config(command: str, data: dict) -> None:
    schema = COMMAND_SCHEMAS[command]
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(data), key=lambda e: e.json_path)
    if errors:
        fields = [(e.json_path, e.message) for e in errors]
        first = fields[0]
        raise InvalidConfigError(
            f"config does not match the {command} schema: "
            f"{first[0]}: {first[1]}",
            field_errors=fields,
        )


def _require(data: dict, command: str, keys) -> None:
    missing = [k for k in keys if k not in data]
    if missing:
        raise InvalidConfigError(
            f"{command} config is missing required "
            f"block(s): {', '.join(missing)}",
            field_errors=[(f"$.{k}", "required block is missing") for k in missing],
        )


def build_array(block: dict | None) -> tuple[ArrayGeometry, dict]:
    block = block or {}
    geometry = ArrayGeometry(
        rows=block.get("rows", 2),
        cols=block.get("cols", 10),
        spacing_row=block.get("spacing_row", 0.5),
        spacing_col=block.get("spacing_col", 0.5),
        element_model=block.get("element_model", "cosine_q"),
        element_q=block.get("element_q", 1.0),
    )
    canonical = {
        "rows": geometry.rows,
        "cols": geometry.cols,
        "spacing_row": geometry.spacing_row,
        "spacing_col": geometry.spacing_col,
        "element_model": geometry.element_model,
        "element_q": geometry.element_q,
    }
    return geometry, canonical


def build_steering(block: dict | None) -> tuple[Steering, dict]:
    block = block or {}
    steering = Steering(
        azimuth_deg=block.get("azimuth_deg", 0.0),
        elevation_deg=block.get("elevation_deg", 0.0),
    )
    canonical = {
        "azimuth_deg": steering.azimuth_deg,
        "elevation_deg": steering.elevation_deg,
    }
    return steering, canonical


def _build_housing(housing) -> tuple[str, float, dict]:
    if housing is None:
        housing = "none"
    if isinstance(housing, str):
        material = housing
        attenuation = housing_attenuation_db(material)
    else:
        material = housing["material"]
        if "attenuation_db" in housing:
            attenuation = float(housing["attenuation_db"])
        else:
            attenuation = housing_attenuation_db(material)
    canonical = {"material": material, "attenuation_db": attenuation}
    return material, attenuation, canonical


def build_channel(block: dict | None) -> tuple[ChannelScenario, float, dict]:
    """Returns (scenario, housing attenuation dB, canonical block)."""
    block = block or {"preset": "a2g-los"}
    frequency = block.get("frequency_ghz", 60.0)
    if "preset" in block:
        scenario = channel_preset(block["preset"], frequency_ghz=frequency)
    else:
        custom = block["custom"]
        scenario = ChannelScenario(
            name=custom.get("name", "custom"),
            ple_n=custom["ple_n"],
            sf_sigma_db=custom["sf_sigma_db"],
            frequency_ghz=frequency,
        )
    _, attenuation, housing_canonical = _build_housing(block.get("housing"))
    canonical = {
        "custom": {
            "name": scenario.name,
            "ple_n": scenario.ple_n,
            "sf_sigma_db": scenario.sf_sigma_db,
        },
        "frequency_ghz": frequency,
        "housing": housing_canonical,
    }
    return scenario, attenuation, canonical


def build_link(block: dict | None, default_preset: str) -> tuple[LinkConfig, dict]:
    block = block or {"preset": default_preset}
    if "preset" in block:
        link = link_preset(block["preset"])
    else:
        custom = dict(block["custom"])
        table = RateTable(
            thresholds_db=tuple(custom["rate_table"]["thresholds_db"]),
            rates_gbps=tuple(custom["rate_table"]["rates_gbps"]),
        )
        link = LinkConfig(
            eirp_dbm=custom["eirp_dbm"],
            rate_table=table,
            rx_gain_dbi=custom.get("rx_gain_dbi"),
            bandwidth_hz=custom.get("bandwidth_hz", 1.76e9),
            noise_figure_db=custom.get("noise_figure_db", 7.0),
            implementation_efficiency=custom.get(
                "implementation_efficiency", 0.75
            ),
            fade_margin_db=custom.get("fade_margin_db", 0.0),
            rate_mode=custom.get("rate_mode", "table"),
        )
    canonical = {
        "custom": {
            "eirp_dbm": link.eirp_dbm,
            "rate_table": {
                "thresholds_db": list(link.rate_table.thresholds_db),
                "rates_gbps": list(link.rate_table.rates_gbps),
            },
            "rx_gain_dbi": link.rx_gain_dbi,
            "bandwidth_hz": link.bandwidth_hz,
            "noise_figure_db": link.noise_figure_db,
            "implementation_efficiency": link.implementation_efficiency,
            "fade_margin_db": link.fade_margin_db,
            "rate_mode": link.rate_mode,
        }
    }
    return link, canonical


def build_uav(block: dict | None) -> tuple[UavPose, dict]:
    block = block or {}
    if "mounts" in block:
        mounts = tuple(
            Mount(
                yaw_deg=m["yaw_deg"],
                downtilt_deg=m.get("downtilt_deg", 45.0),
            )
            for m in block["mounts"]
        )
    else:
        mounts = default_mounts()
    pose = UavPose(
        height_m=block.get("h", 35.0),
        ground_offset_m=block.get("d0", 22.0),
        mounts=mounts,
    )
    canonical = {
        "h": pose.height_m,
        "d0": pose.ground_offset_m,
        "mounts": [
            {"yaw_deg": m.yaw_deg, "downtilt_deg": m.downtilt_deg}
            for m in pose.mounts
        ],
    }
    return pose, canonical


def build_scenario(
    data: dict, resolution_deg: float
) -> tuple[MuScenario, dict]:
    _require(data, "scenario", ["users"])
    geometry, array_canonical = build_array(data.get("array"))
    channel, housing_db, channel_canonical = build_channel(data.get("channel"))
    link, link_canonical = build_link(data.get("link"), "uav-abs")
    pose, uav_canonical = build_uav(data.get("uav"))
    interference = data.get("interference", True)
    scenario = MuScenario(
        pose=pose,
        users=tuple((u[0], u[1]) for u in data["users"]),
        array=geometry,
        channel=channel,
        link=link,
        interference=interference,
        housing_db=housing_db,
        resolution_deg=resolution_deg,
    )
    canonical = {
        "array": array_canonical,
        "channel": channel_canonical,
        "link": link_canonical,
        "uav": uav_canonical,
        "users": [[x, y] for x, y in scenario.users],
        "interference": interference,
    }
    return scenario, canonical


def build_sweep_inputs(data: dict, default_link_preset: str = "ue-poc"):
    """Returns (array, channel, housing_db, link, sweep params, canonical)."""
    _require(data, "sweep", ["channel", "link", "sweep"])
    geometry, array_canonical = build_array(data.get("array"))
    channel, housing_db, channel_canonical = build_channel(data["channel"])
    link, link_canonical = build_link(data["link"], default_link_preset)
    sweep = data["sweep"]
    params = {
        "d_min_m": float(sweep["d_min"]),
        "d_max_m": float(sweep["d_max"]),
        "step_m": float(sweep["step"]),
        "n_streams": int(sweep.get("n_streams", 4)),
    }
    canonical = {
        "array": array_canonical,
        "channel": channel_canonical,
        "link": link_canonical,
        "sweep": {
            "d_min": params["d_min_m"],
            "d_max": params["d_max_m"],
            "step": params["step_m"],
            "n_streams": params["n_streams"],
        },
    }
    return geometry, channel, housing_db, link, params, canonical
