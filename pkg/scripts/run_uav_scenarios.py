"""Evaluate aerial two-user service as the users move apart.

Keeps the first user fixed and slides the second user outward along
the ground, printing per-stream SINR, rate, and the angular separation
seen from the platform. With --interference off the run degenerates to
two independent single-user links, which is the right baseline to
quote against the multi-user rows.
"""

from __future__ import annotations

import argparse
import sys

from arraylink import (
    MuScenario,
    UavPose,
    channel_preset,
    default_module,
    evaluate_scenario,
    link_preset,
)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--height", type=float, default=35.0, help="platform height, m")
    parser.add_argument("--d0", type=float, default=22.0, help="nominal ground range, m")
    parser.add_argument(
        "--offsets",
        type=float,
        nargs="+",
        default=[0.0, 5.0, 10.0, 20.0],
        help="extra x displacement of the second user, m",
    )
    parser.add_argument("--seed", type=int, default=0, help="shadow-fading seed")
    parser.add_argument(
        "--fading", choices=("median", "stochastic"), default="median"
    )
    parser.add_argument(
        "--interference",
        choices=("on", "off"),
        default="on",
        help="off scores each stream against noise only",
    )
    args = parser.parse_args(argv)

    module = default_module()
    channel = channel_preset("a2g-los")
    link = link_preset("uav-abs")
    pose = UavPose(height_m=args.height, ground_offset_m=args.d0)
    print(f"reference slant: {pose.reference_slant_m:.2f} m")

    header = f"{'offset':>7}  {'beta':>7}  {'sinr_1':>8} {'sinr_2':>8}  {'rates':>15}  {'agg':>6}"
    print(header)
    for offset in args.offsets:
        scenario = MuScenario(
            pose=pose,
            users=((args.d0, 3.0), (args.d0 + offset, -3.0)),
            array=module,
            channel=channel,
            link=link,
            interference=args.interference == "on",
        )
        result = evaluate_scenario(scenario, fading=args.fading, seed=args.seed)
        beta = f"{result.beta_deg:7.3f}" if result.beta_deg is not None else "   n/a"
        rates = "/".join(f"{s.rate_gbps:.3f}" for s in result.streams)
        clamped = any(s.steering_clamped for s in result.streams)
        print(
            f"{offset:7.2f}  {beta}  "
            + " ".join(f"{s.sinr_db:8.3f}" for s in result.streams)
            + f"  {rates:>15}  {result.aggregate_gbps:6.3f}"
            + ("  [steering clamped]" if clamped else "")
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
