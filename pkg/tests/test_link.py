"""Noise floor, budgets, SINR combining, and rate ladders."""

from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arraylink import (
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
from arraylink.errors import InvalidConfigError
from arraylink.link import RATE_TABLE_PRESETS

THREE_DB = 10.0 * math.log10(2.0)


def demo_link(**overrides) -> LinkConfig:
    kwargs = {
        "eirp_dbm": 21.0,
        "rate_table": rate_table_preset("ue-poc"),
        "rx_gain_dbi": 13.0,
    }
    kwargs.update(overrides)
    return LinkConfig(**kwargs)


class TestNoise:
    def test_reference_noise_floor(self):
        # -174 + 10 log10(1.76e9) + 7
        assert noise_power_dbm(1.76e9, 7.0) == pytest.approx(-74.544873, abs=1e-6)

    def test_unit_bandwidth_is_thermal_floor(self):
        assert noise_power_dbm(1.0, 0.0) == -174.0

    def test_doubling_bandwidth_adds_3dB(self):
        assert noise_power_dbm(2e9, 5.0) - noise_power_dbm(1e9, 5.0) == (
            pytest.approx(THREE_DB, abs=1e-12)
        )

    def test_noise_figure_adds_directly(self):
        assert noise_power_dbm(1e9, 9.0) - noise_power_dbm(1e9, 2.0) == (
            pytest.approx(7.0, abs=1e-12)
        )

    def test_non_positive_bandwidth_rejected(self):
        with pytest.raises(InvalidConfigError):
            noise_power_dbm(0.0, 7.0)


class TestReceivedPower:
    def test_budget_chain(self):
        link = demo_link()
        assert received_power_dbm(link, 85.263) == pytest.approx(
            21.0 + 13.0 - 85.263, abs=1e-12
        )

    def test_extra_losses_subtract(self):
        link = demo_link()
        clear = received_power_dbm(link, 80.0)
        assert received_power_dbm(link, 80.0, extra_losses_db=30.0) == (
            pytest.approx(clear - 30.0, abs=1e-12)
        )

    def test_fade_margin_subtracts(self):
        assert received_power_dbm(demo_link(fade_margin_db=6.0), 80.0) == (
            pytest.approx(received_power_dbm(demo_link(), 80.0) - 6.0, abs=1e-12)
        )

    def test_unresolved_rx_gain_rejected(self):
        link = demo_link(rx_gain_dbi=None)
        with pytest.raises(InvalidConfigError, match="rx gain"):
            received_power_dbm(link, 80.0)

    def test_resolve_rx_gain_fills_none_only(self):
        fixed = demo_link(rx_gain_dbi=5.0)
        assert resolve_rx_gain(fixed, 18.0).rx_gain_dbi == 5.0
        derived = resolve_rx_gain(demo_link(rx_gain_dbi=None), 18.0)
        assert derived.rx_gain_dbi == 18.0


class TestSinr:
    def test_no_interference_is_snr(self):
        budget = StreamBudget(signal_dbm=-50.0, noise_dbm=-74.0)
        assert sinr_db(budget) == pytest.approx(24.0, abs=1e-12)

    def test_interferer_at_noise_level_costs_3dB(self):
        budget = StreamBudget(
            signal_dbm=-50.0, interference_dbm=(-74.0,), noise_dbm=-74.0
        )
        assert sinr_db(budget) == pytest.approx(24.0 - THREE_DB, abs=1e-12)

    def test_weak_interferer_is_negligible(self):
        budget = StreamBudget(
            signal_dbm=-50.0, interference_dbm=(-94.0,), noise_dbm=-74.0
        )
        assert sinr_db(budget) == pytest.approx(24.0, abs=0.05)

    def test_equal_interferers_combine_linearly(self):
        one = StreamBudget(signal_dbm=-50.0, interference_dbm=(-70.0,), noise_dbm=-200.0)
        two = StreamBudget(
            signal_dbm=-50.0, interference_dbm=(-70.0, -70.0), noise_dbm=-200.0
        )
        assert sinr_db(one) - sinr_db(two) == pytest.approx(THREE_DB, abs=1e-9)

    def test_interference_order_irrelevant(self):
        a = StreamBudget(-50.0, (-70.0, -80.0, -65.0), -74.0)
        b = StreamBudget(-50.0, (-65.0, -70.0, -80.0), -74.0)
        assert sinr_db(a) == pytest.approx(sinr_db(b), abs=1e-12)

    def test_non_finite_noise_rejected(self):
        with pytest.raises(InvalidConfigError):
            StreamBudget(signal_dbm=-50.0, noise_dbm=-math.inf)


class TestRateTable:
    def test_outage_below_first_threshold(self):
        table = rate_table_preset("ue-poc")
        assert rate_from_sinr_gbps(table.thresholds_db[0] - 0.01, table) == 0.0

    def test_threshold_is_inclusive(self):
        table = rate_table_preset("ue-poc")
        assert rate_from_sinr_gbps(table.thresholds_db[0], table) == (
            table.rates_gbps[0]
        )

    def test_cap_at_top(self):
        table = rate_table_preset("ue-poc")
        assert rate_from_sinr_gbps(100.0, table) == table.per_stream_cap_gbps
        assert rate_from_sinr_gbps(math.inf, table) == table.per_stream_cap_gbps

    def test_every_rung_reachable(self):
        table = rate_table_preset("uav-abs")
        for threshold, rate in zip(table.thresholds_db, table.rates_gbps):
            assert rate_from_sinr_gbps(threshold + 0.1, table) == rate

    @given(s1=st.floats(-20.0, 40.0), s2=st.floats(-20.0, 40.0))
    @settings(max_examples=100, deadline=None)
    def test_monotone_in_sinr(self, s1, s2):
        table = rate_table_preset("uav-abs")
        lo, hi = sorted((s1, s2))
        assert rate_from_sinr_gbps(lo, table) <= rate_from_sinr_gbps(hi, table)

    @pytest.mark.parametrize(
        "thresholds,rates",
        [
            ((), ()),
            ((1.0, 1.0), (0.5, 0.6)),
            ((2.0, 1.0), (0.5, 0.6)),
            ((1.0, 2.0), (0.6, 0.5)),
            ((1.0, 2.0), (-0.1, 0.5)),
            ((1.0, 2.0), (0.5,)),
        ],
    )
    def test_table_validation(self, thresholds, rates):
        with pytest.raises(InvalidConfigError):
            RateTable(thresholds_db=thresholds, rates_gbps=rates)


class TestPresetLadders:
    @pytest.mark.parametrize("name", sorted(RATE_TABLE_PRESETS))
    def test_six_steps_spaced_3dB(self, name):
        table = rate_table_preset(name)
        assert len(table.thresholds_db) == 6
        steps = [
            b - a for a, b in zip(table.thresholds_db, table.thresholds_db[1:])
        ]
        assert all(step == pytest.approx(3.0, abs=1e-12) for step in steps)

    def test_per_stream_caps(self):
        assert rate_table_preset("ue-poc").per_stream_cap_gbps == 1.0575
        assert rate_table_preset("uav-abs").per_stream_cap_gbps == 1.12

    def test_link_presets_share_eirp(self):
        assert link_preset("ue-poc").eirp_dbm == 21.0
        assert link_preset("uav-abs").eirp_dbm == 21.0
        assert link_preset("ue-poc").rx_gain_dbi is None

    def test_unknown_names(self):
        with pytest.raises(InvalidConfigError):
            rate_table_preset("wifi")
        with pytest.raises(InvalidConfigError):
            link_preset("wifi")


class TestShannonMode:
    def test_capped_at_table_top(self):
        link = demo_link(rate_mode="shannon")
        assert shannon_rate_gbps(60.0, link) == link.rate_table.per_stream_cap_gbps

    def test_low_sinr_follows_capacity(self):
        link = demo_link(rate_mode="shannon")
        expect = 0.75 * 1.76e9 * math.log2(1.0 + 10.0 ** (-0.5)) / 1e9
        assert shannon_rate_gbps(-5.0, link) == pytest.approx(expect, rel=1e-12)

    @given(s1=st.floats(-30.0, 60.0), s2=st.floats(-30.0, 60.0))
    @settings(max_examples=100, deadline=None)
    def test_monotone(self, s1, s2):
        link = demo_link(rate_mode="shannon")
        lo, hi = sorted((s1, s2))
        assert shannon_rate_gbps(lo, link) <= shannon_rate_gbps(hi, link) + 1e-15

    def test_stream_rate_dispatches_on_mode(self):
        table_link = demo_link()
        shannon_link = demo_link(rate_mode="shannon")
        assert stream_rate_gbps(10.0, table_link) == rate_from_sinr_gbps(
            10.0, table_link.rate_table
        )
        assert stream_rate_gbps(10.0, shannon_link) == shannon_rate_gbps(
            10.0, shannon_link
        )


class TestAggregate:
    def test_sum(self):
        assert aggregate_rate_gbps([1.096, 1.072]) == pytest.approx(2.168, abs=1e-12)
        assert aggregate_rate_gbps([1.12, 1.12]) == pytest.approx(2.24, abs=1e-12)

    def test_empty_is_zero(self):
        assert aggregate_rate_gbps([]) == 0.0

    def test_permutation_invariant(self):
        rates = [0.3, 1.1, 0.0, 0.9]
        assert aggregate_rate_gbps(rates) == aggregate_rate_gbps(rates[::-1])


class TestLinkConfigValidation:
    @pytest.mark.parametrize(
        "overrides",
        [
            {"bandwidth_hz": 0.0},
            {"bandwidth_hz": -1e9},
            {"implementation_efficiency": 0.0},
            {"implementation_efficiency": 1.2},
            {"fade_margin_db": -1.0},
            {"rate_mode": "adaptive"},
        ],
    )
    def test_rejected(self, overrides):
        with pytest.raises(InvalidConfigError):
            demo_link(**overrides)
