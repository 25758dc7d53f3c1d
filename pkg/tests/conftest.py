"""Shared fixtures and independent numeric helpers for the test suite.

Oracle helpers here deliberately avoid the library's own quadrature and
pattern-sampling code paths: integration uses Simpson's rule on node
grids and correlation oracles re-derive fields straight from element
positions, so agreement is evidence rather than tautology.
"""

from __future__ import annotations

import math

import numpy as np
import pytest
from scipy.integrate import simpson

from arraylink import (
    ArrayGeometry,
    Steering,
    build_array,
    default_module,
    field_toward,
    synthesize_pattern,
)


@pytest.fixture(scope="session")
def module_2x10() -> ArrayGeometry:
    return default_module()


@pytest.fixture(scope="session")
def ula_1x10_iso() -> ArrayGeometry:
    return build_array(1, 10, element_model="isotropic")


@pytest.fixture(scope="session")
def pair_broadside_iso() -> ArrayGeometry:
    return build_array(1, 2, element_model="isotropic")


@pytest.fixture(scope="session")
def pattern_2x10_boresight(module_2x10):
    return synthesize_pattern(module_2x10)


def steered(az_deg: float, el_deg: float = 0.0) -> Steering:
    return Steering(azimuth_deg=az_deg, elevation_deg=el_deg)


def simpson_mean_directivity(
    geometry: ArrayGeometry,
    steering: Steering,
    total_radiated_power: float,
    node_step_deg: float = 0.25,
) -> float:
    """(1/4pi) integral of directivity over the sphere, independently.

    Fields come from the analytic evaluator on a node grid (including
    both poles) and the integral uses Simpson's rule, so neither the
    sample placement nor the quadrature matches the library's midpoint
    rectangle rule.
    """
    theta = np.radians(np.arange(0.0, 180.0 + node_step_deg / 2, node_step_deg))
    phi = np.radians(np.arange(0.0, 360.0 + node_step_deg / 2, node_step_deg))
    e_theta, e_phi = field_toward(
        geometry,
        steering,
        np.degrees(theta)[:, np.newaxis],
        np.degrees(phi)[np.newaxis, :],
    )
    density = np.abs(e_theta) ** 2 + np.abs(e_phi) ** 2
    integrand = density * np.sin(theta)[:, np.newaxis]
    sphere_integral = simpson(simpson(integrand, x=phi, axis=1), x=theta)
    return float(sphere_integral / total_radiated_power)


def brute_force_ecc(
    geometry: ArrayGeometry,
    steer_a: Steering,
    steer_b: Steering,
    resolution_deg: float,
    chunk_rows: int = 128,
) -> float:
    """Envelope correlation rebuilt from scratch at a chosen resolution.

    Walks the same midpoint/node grid convention but accumulates the
    inner product and powers with an explicit per-element phase sum,
    never calling the library's pattern or correlation code.
    """
    n_theta = int(round(180.0 / resolution_deg))
    n_phi = int(round(360.0 / resolution_deg))
    theta = np.radians((np.arange(n_theta) + 0.5) * resolution_deg)
    phi = np.radians(np.arange(n_phi) * (360.0 / n_phi))
    d_phi = 2.0 * math.pi / n_phi
    d_theta = math.radians(resolution_deg)

    x = (np.arange(geometry.cols) - (geometry.cols - 1) / 2.0) * geometry.spacing_col
    y = (np.arange(geometry.rows) - (geometry.rows - 1) / 2.0) * geometry.spacing_row

    def steer_cosines(s: Steering) -> tuple[float, float]:
        az = math.radians(s.azimuth_deg)
        el = math.radians(s.elevation_deg)
        return math.sin(az) * math.cos(el), math.sin(el)

    ua, va = steer_cosines(steer_a)
    ub, vb = steer_cosines(steer_b)

    inner = 0.0 + 0.0j
    power_a = 0.0
    power_b = 0.0
    cos_phi = np.cos(phi)[np.newaxis, :]
    sin_phi = np.sin(phi)[np.newaxis, :]
    for start in range(0, n_theta, chunk_rows):
        th = theta[start : start + chunk_rows][:, np.newaxis]
        st = np.sin(th)
        u = st * cos_phi
        v = st * sin_phi
        if geometry.element_model == "isotropic":
            elem = np.ones_like(u)
        else:
            ct = np.cos(th)
            elem = np.where(
                ct > 0.0,
                np.power(np.clip(ct, 0.0, None), geometry.element_q),
                0.0,
            ) * np.ones_like(u)

        field_a = np.zeros(u.shape, dtype=complex)
        field_b = np.zeros(u.shape, dtype=complex)
        for xe in x:
            for ye in y:
                field_a += np.exp(2j * np.pi * (xe * (u - ua) + ye * (v - va)))
                field_b += np.exp(2j * np.pi * (xe * (u - ub) + ye * (v - vb)))
        field_a *= elem
        field_b *= elem

        w = st * d_theta * d_phi
        inner += complex(np.sum(w * field_a * np.conj(field_b)))
        power_a += float(np.sum(w * np.abs(field_a) ** 2))
        power_b += float(np.sum(w * np.abs(field_b) ** 2))
    return float(abs(inner) ** 2 / (power_a * power_b))
