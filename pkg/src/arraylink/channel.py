"""Large-scale propagation: close-in path loss and lognormal shadowing.

Path loss follows the close-in free-space reference form

    PL(d) = 32.4 + 10 n log10(d / 1 m) + 20 log10(f / 1 GHz)   [dB]

with a 1 m reference distance, a scenario path-loss exponent n, and a
zero-mean Gaussian shadow term with scenario sigma on top. Distances
below 1 m are outside the model and rejected.

Shadowing draws are counter-based: each (seed, sample_index) pair maps
to its own Philox counter block, so the i-th user's fade is the same
no matter how many draws happened before it or in what order. Median
mode skips the draw and contributes exactly 0 dB.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidConfigError, OutOfModelRangeError

REFERENCE_DISTANCE_M = 1.0
FADE_MODES = ("median", "stochastic")


@dataclass(frozen=True)
class ChannelScenario:
    """Close-in model parameters for one propagation environment."""

    name: str
    ple_n: float
    sf_sigma_db: float
    frequency_ghz: float = 60.0

    def __post_init__(self):
        if self.ple_n <= 0.0:
            raise InvalidConfigError(f"path-loss exponent must be > 0, got {self.ple_n}")
        if self.sf_sigma_db < 0.0:
            raise InvalidConfigError(
                f"shadow sigma must be >= 0 dB, got {self.sf_sigma_db}"
            )
        if self.frequency_ghz <= 0.0:
            raise InvalidConfigError(
                f"carrier frequency must be positive, got {self.frequency_ghz}"
            )


# Indoor-office and street-canyon line-of-sight parameter sets are the
# standard mmWave measurement fits. The air-to-ground set is a stand-in
# chosen below the street-canyon exponent (elevated links see fewer
# ground interactions); override via a custom scenario when a measured
# fit is available.
_PRESETS = {
    "inh-office-los": ("InH-Office-LoS", 1.73, 3.02),
    "umi-street-canyon-los": ("UMi-StreetCanyon-LoS", 2.1, 3.76),
    "a2g-los": ("A2G-LoS", 1.6, 2.0),
}

CHANNEL_PRESET_NAMES = tuple(sorted(_PRESETS))


def channel_preset(name: str, frequency_ghz: float = 60.0) -> ChannelScenario:
    key = name.strip().lower()
    if key not in _PRESETS:
        raise InvalidConfigError(
            f"unknown channel preset {name!r}; expected one of "
            f"{', '.join(CHANNEL_PRESET_NAMES)}"
        )
    label, ple_n, sigma = _PRESETS[key]
    return ChannelScenario(
        name=label, ple_n=ple_n, sf_sigma_db=sigma, frequency_ghz=frequency_ghz
    )


def path_loss_db(scenario: ChannelScenario, distance_m: float) -> float:
    """Median close-in path loss at a 3-D distance in meters."""
    if distance_m < REFERENCE_DISTANCE_M:
        raise OutOfModelRangeError(
            f"distance {distance_m} m is below the {REFERENCE_DISTANCE_M} m "
            "close-in reference; the model is not defined there"
        )
    return (
        32.4
        + 10.0 * scenario.ple_n * math.log10(distance_m / REFERENCE_DISTANCE_M)
        + 20.0 * math.log10(scenario.frequency_ghz)
    )


def shadow_sample_db(
    scenario: ChannelScenario,
    seed: int,
    sample_index: int,
    mode: str = "stochastic",
) -> float:
    """One reproducible shadow-fading draw in dB.

    The Philox key carries the seed and the counter starts at block
    sample_index << 128, giving every index 2**128 disjoint states:
    draws commute and repeat bit-exactly.
    """
    if mode not in FADE_MODES:
        raise InvalidConfigError(
            f"fade mode must be one of {FADE_MODES}, got {mode!r}"
        )
    if sample_index < 0:
        raise InvalidConfigError(f"sample index must be >= 0, got {sample_index}")
    if mode == "median" or scenario.sf_sigma_db == 0.0:
        return 0.0
    bits = np.random.Philox(
        key=seed & ((1 << 128) - 1), counter=sample_index << 128
    )
    return float(np.random.Generator(bits).normal(0.0, scenario.sf_sigma_db))


# Enclosure penetration defaults in dB. Metal alloy housings measure
# tens of dB at mmWave, effectively opaque; glass and ceramic shells
# cost only a couple of dB and are the practical choices.
HOUSING_ATTENUATION_DB = {
    "none": 0.0,
    "glass": 2.0,
    "ceramic": 2.0,
    "metal_alloy": 30.0,
}


def housing_attenuation_db(material: str) -> float:
    key = material.strip().lower()
    if key not in HOUSING_ATTENUATION_DB:
        raise InvalidConfigError(
            f"unknown housing material {material!r}; expected one of "
            f"{', '.join(sorted(HOUSING_ATTENUATION_DB))}"
        )
    return HOUSING_ATTENUATION_DB[key]
