"""Command-line front end.

Five subcommands cover the package's flows: pattern synthesis and
export, envelope correlation between two exported patterns, a single
path-loss evaluation, a rate-versus-distance sweep, and a full
multi-user scenario. Each reads one JSON config (--config), optionally
writes <out>.csv and <out>.json artifacts (--out), and prints a short
headline to stdout.

Exit codes: 0 success; 2 configuration problems (bad JSON, schema
violations, values outside the model's contract) with a machine
readable error record on stderr; 3 numerical degeneracies discovered
during evaluation. No output files are written on failure.

Outputs are byte-identical across reruns of the same config, seed, and
flags: summaries carry no timestamps, and stochastic fading draws are
counter-based from the seed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import __version__
from .arrays import (
    hpbw_deg,
    peak_direction_deg,
    peak_directivity_dbi,
    synthesize_pattern,
)
from .channel import path_loss_db
from .config import (
    build_channel,
    build_scenario,
    build_steering,
    build_sweep_inputs,
    load_config,
    validate_config,
)
from .config import build_array as build_array_config
from .correlation import apply_displacement, ecc
from .deployment import evaluate_scenario, sweep_distance
from .errors import ConfigurationError, NoBeamwidthError, NumericalDegeneracyError
from .pattern_io import pattern_csv_text, read_pattern_csv

FADING_MODES = ("median", "stochastic")


def _fmt(value: float) -> str:
    return format(float(value), ".12g")


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _run_pattern(args, data):
    geometry, array_canonical = build_array_config(data.get("array"))
    steering, steering_canonical = build_steering(data.get("steering"))
    frequency = data.get("frequency_ghz", 60.0)
    pattern = synthesize_pattern(geometry, steering, args.resolution, frequency)
    peak = peak_directivity_dbi(pattern)
    theta_pk, phi_pk = peak_direction_deg(pattern)
    cuts = {}
    for plane in ("azimuth", "elevation"):
        try:
            cuts[plane] = hpbw_deg(pattern, plane)
        except NoBeamwidthError:
            cuts[plane] = None
    results = {
        "peak_directivity_dbi": peak,
        "peak_theta_deg": theta_pk,
        "peak_phi_deg": phi_pk,
        "hpbw_azimuth_deg": cuts["azimuth"],
        "hpbw_elevation_deg": cuts["elevation"],
    }
    canonical = {
        "array": array_canonical,
        "steering": steering_canonical,
        "frequency_ghz": frequency,
    }
    return results, canonical, pattern_csv_text(pattern), (
        f"peak directivity {_fmt(peak)} dBi at theta {_fmt(theta_pk)} deg, "
        f"phi {_fmt(phi_pk)} deg"
    )


def _run_ecc(args, data):
    frequency = data.get("frequency_ghz", 60.0)
    p_a = read_pattern_csv(data["pattern_a"], frequency_ghz=frequency)
    p_b = read_pattern_csv(data["pattern_b"], frequency_ghz=frequency)
    disp_a = data.get("displacement_a", [0.0, 0.0, 0.0])
    disp_b = data.get("displacement_b", [0.0, 0.0, 0.0])
    if any(disp_a):
        p_a = apply_displacement(p_a, disp_a)
    if any(disp_b):
        p_b = apply_displacement(p_b, disp_b)
    value = ecc(p_a, p_b)
    results = {"ecc": value}
    canonical = {
        "pattern_a": data["pattern_a"],
        "pattern_b": data["pattern_b"],
        "displacement_a": [float(v) for v in disp_a],
        "displacement_b": [float(v) for v in disp_b],
        "frequency_ghz": frequency,
    }
    return results, canonical, None, _fmt(value)


def _run_pathloss(args, data):
    channel, housing_db, channel_canonical = build_channel(data["channel"])
    distance = float(data["distance_m"])
    loss = path_loss_db(channel, distance)
    results = {
        "path_loss_db": loss,
        "distance_m": distance,
        "housing_attenuation_db": housing_db,
    }
    canonical = {"channel": channel_canonical, "distance_m": distance}
    return results, canonical, None, _fmt(loss)


def _run_sweep(args, data):
    geometry, channel, housing_db, link, params, canonical = build_sweep_inputs(
        data
    )
    points = sweep_distance(
        geometry,
        channel,
        link,
        n_streams=params["n_streams"],
        d_min_m=params["d_min_m"],
        d_max_m=params["d_max_m"],
        step_m=params["step_m"],
        fading=args.fading,
        seed=args.seed,
        housing_db=housing_db,
        resolution_deg=args.resolution,
    )
    rows = [
        (
            _fmt(p.d_m),
            _fmt(p.pl_db),
            _fmt(p.snr_db),
            _fmt(p.stream_rate_gbps),
            _fmt(p.aggregate_gbps),
        )
        for p in points
    ]
    csv_text = _csv_text(
        ("d_m", "pl_db", "snr_db", "stream_rate_gbps", "aggregate_gbps"), rows
    )
    aggregates = [p.aggregate_gbps for p in points]
    results = {
        "n_points": len(points),
        "peak_aggregate_gbps": max(aggregates),
        "min_aggregate_gbps": min(aggregates),
        "first_aggregate_gbps": aggregates[0],
    }
    return results, canonical, csv_text, (
        f"peak aggregate {_fmt(max(aggregates))} Gbps "
        f"across {len(points)} distances"
    )


def _run_scenario(args, data):
    scenario, canonical = build_scenario(data, args.resolution)
    result = evaluate_scenario(scenario, fading=args.fading, seed=args.seed)
    rows = [
        (
            str(s.index),
            _fmt(s.user_xy[0]),
            _fmt(s.user_xy[1]),
            _fmt(s.slant_m),
            _fmt(s.steering.azimuth_deg),
            _fmt(s.steering.elevation_deg),
            "true" if s.steering_clamped else "false",
            _fmt(s.path_loss_db),
            _fmt(s.shadow_db),
            _fmt(s.signal_dbm),
            _fmt(s.noise_dbm),
            _fmt(s.snr_db),
            _fmt(s.sinr_db),
            _fmt(s.rate_gbps),
        )
        for s in result.streams
    ]
    csv_text = _csv_text(
        (
            "stream",
            "user_x_m",
            "user_y_m",
            "slant_m",
            "steer_az_deg",
            "steer_el_deg",
            "clamped",
            "path_loss_db",
            "shadow_db",
            "signal_dbm",
            "noise_dbm",
            "snr_db",
            "sinr_db",
            "rate_gbps",
        ),
        rows,
    )
    results = {
        "aggregate_gbps": result.aggregate_gbps,
        "stream_rates_gbps": [s.rate_gbps for s in result.streams],
        "stream_sinrs_db": [s.sinr_db for s in result.streams],
        "beta_deg": result.beta_deg,
        "reference_slant_m": result.reference_slant_m,
        "any_steering_clamped": any(s.steering_clamped for s in result.streams),
    }
    return results, canonical, csv_text, (
        f"aggregate {_fmt(result.aggregate_gbps)} Gbps over "
        f"{len(result.streams)} streams"
    )


_COMMANDS = {
    "pattern": _run_pattern,
    "ecc": _run_ecc,
    "pathloss": _run_pathloss,
    "sweep": _run_sweep,
    "scenario": _run_scenario,
}


def _write_outputs(out_base: str, summary: dict, csv_text: str | None) -> list[str]:
    base = Path(out_base)
    if base.parent != Path("."):
        base.parent.mkdir(parents=True, exist_ok=True)
    written = []
    if csv_text is not None:
        csv_path = Path(f"{out_base}.csv")
        csv_path.write_text(csv_text)
        written.append(str(csv_path))
    json_path = Path(f"{out_base}.json")
    json_path.write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    written.append(str(json_path))
    return written


def _error_record(exc: Exception, code: int) -> str:
    record = {
        "error": type(exc).__name__,
        "exit_code": code,
        "message": str(exc),
        "fields": [
            {"path": path, "message": message}
            for path, message in getattr(exc, "field_errors", [])
        ],
    }
    return json.dumps(record, sort_keys=True)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--config", required=True, metavar="PATH", help="JSON config file"
    )
    common.add_argument(
        "--out",
        metavar="PATH",
        default=None,
        help="base path for artifacts; writes PATH.csv and PATH.json",
    )
    common.add_argument(
        "--seed", type=int, default=0, metavar="N", help="fading seed (default 0)"
    )
    common.add_argument(
        "--resolution",
        type=float,
        default=1.0,
        metavar="DEG",
        help="pattern grid resolution in degrees (default 1.0)",
    )
    common.add_argument(
        "--fading",
        choices=FADING_MODES,
        default="median",
        help="shadow fading mode (default median)",
    )

    parser = argparse.ArgumentParser(
        prog="arraylink",
        description="multi-beam phased-array link and deployment simulator",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser(
        "pattern", parents=[common], help="synthesize and export an array pattern"
    )
    sub.add_parser(
        "ecc", parents=[common], help="envelope correlation of two pattern CSVs"
    )
    sub.add_parser(
        "pathloss", parents=[common], help="close-in path loss at one distance"
    )
    sub.add_parser(
        "sweep", parents=[common], help="aggregate rate versus distance"
    )
    sub.add_parser(
        "scenario", parents=[common], help="evaluate a multi-user deployment"
    )
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        data = load_config(args.config)
        validate_config(args.command, data)
        results, canonical, csv_text, headline = _COMMANDS[args.command](
            args, data
        )
    except ConfigurationError as exc:
        print(_error_record(exc, 2), file=sys.stderr)
        return 2
    except NumericalDegeneracyError as exc:
        print(_error_record(exc, 3), file=sys.stderr)
        return 3

    summary = {
        "command": args.command,
        "version": __version__,
        "seed": args.seed,
        "resolution_deg": args.resolution,
        "fading": args.fading,
        "config": canonical,
        "results": results,
    }
    if args.out is not None:
        for path in _write_outputs(args.out, summary, csv_text):
            print(f"wrote {path}")
    print(headline)
    return 0


if __name__ == "__main__":
    sys.exit(main())
