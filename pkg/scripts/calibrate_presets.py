"""Print the operating points the rate-table presets must bracket.

Run after any change to pattern synthesis or deployment geometry and
check that every threshold in link.RATE_TABLE_PRESETS keeps at least
half a dB of margin to the operating points printed here.
"""

from __future__ import annotations

from arraylink import (
    MuScenario,
    UavPose,
    boresight_peak_dbi,
    channel_preset,
    default_module,
    evaluate_scenario,
    link_preset,
    noise_power_dbm,
    path_loss_db,
    synthesize_pattern,
    peak_directivity_dbi,
    hpbw_deg,
)


def main() -> None:
    module = default_module()
    peak = boresight_peak_dbi(module)
    pattern = synthesize_pattern(module)
    print(f"2x10 module peak directivity: {peak:.6f} dBi")
    print(f"  azimuth HPBW: {hpbw_deg(pattern, 'azimuth'):.4f} deg")
    print(f"  elevation HPBW: {hpbw_deg(pattern, 'elevation'):.4f} deg")

    link = link_preset("ue-poc")
    noise = noise_power_dbm(link.bandwidth_hz, link.noise_figure_db)
    print(f"noise floor: {noise:.6f} dBm")
    for preset in ("inh-office-los", "umi-street-canyon-los"):
        ch = channel_preset(preset)
        for d in (1.0, 10.0, 30.0):
            pl = path_loss_db(ch, d)
            snr = link.eirp_dbm + peak - pl - noise
            print(f"  {ch.name:24s} d={d:5.1f} m  PL={pl:8.4f} dB  SNR={snr:8.4f} dB")

    uav_link = link_preset("uav-abs")
    for label, users, interf in (
        ("SU", ((22.0, 3.0), (22.0, 3.0)), False),
        ("MU d1", ((22.0, 3.0), (22.0, -3.0)), True),
        ("MU d2", ((22.0, 3.0), (32.0, -3.0)), True),
    ):
        scenario = MuScenario(
            pose=UavPose(),
            users=users,
            array=module,
            channel=channel_preset("a2g-los"),
            link=uav_link,
            interference=interf,
        )
        result = evaluate_scenario(scenario)
        sinrs = ", ".join(f"{s.sinr_db:8.4f}" for s in result.streams)
        snrs = ", ".join(f"{s.snr_db:8.4f}" for s in result.streams)
        rates = ", ".join(f"{s.rate_gbps:.4f}" for s in result.streams)
        steers = ", ".join(
            f"(az {s.steering.azimuth_deg:7.3f}, el {s.steering.elevation_deg:7.3f})"
            for s in result.streams
        )
        print(f"{label}: slants {[round(s.slant_m, 4) for s in result.streams]}")
        print(f"  steer {steers}")
        print(f"  SNR  [{snrs}]  SINR [{sinrs}]")
        print(f"  rates [{rates}] aggregate {result.aggregate_gbps:.4f} Gbps")
        if result.beta_deg is not None:
            print(f"  beta {result.beta_deg:.4f} deg")


if __name__ == "__main__":
    main()
