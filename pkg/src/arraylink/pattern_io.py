"""CSV interchange for sampled radiation patterns.

One row per grid sample, theta-major order, with a mandatory header:

    theta_deg,phi_deg,re_etheta,im_etheta,re_ephi,im_ephi

Floats are written with 17 significant digits so export followed by
import reproduces the pattern bit for bit. Import accepts any file
honouring the header and the grid convention (theta at midpoints of a
uniform grid over (0, 180), phi at uniform nodes over [0, 360)); it
re-checks completeness rather than trusting row order metadata.
"""

from __future__ import annotations

import csv
import io
import math

import numpy as np

from .arrays import RadiationPattern
from .errors import InvalidConfigError, InvalidResolutionError

CSV_HEADER = ("theta_deg", "phi_deg", "re_etheta", "im_etheta", "re_ephi", "im_ephi")


def write_pattern_csv(pattern: RadiationPattern, path) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(pattern_csv_text(pattern))


def pattern_csv_text(pattern: RadiationPattern) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for i, theta in enumerate(pattern.theta_deg):
        for j, phi in enumerate(pattern.phi_deg):
            et = pattern.e_theta[i, j]
            ep = pattern.e_phi[i, j]
            writer.writerow(
                [
                    format(theta, ".17g"),
                    format(phi, ".17g"),
                    format(et.real, ".17g"),
                    format(et.imag, ".17g"),
                    format(ep.real, ".17g"),
                    format(ep.imag, ".17g"),
                ]
            )
    return buf.getvalue()


def _uniform_spacing(values: np.ndarray, label: str) -> float:
    diffs = np.diff(values)
    if values.size < 2 or not np.allclose(diffs, diffs[0], atol=1e-9):
        raise InvalidResolutionError(f"{label} samples are not uniformly spaced")
    return float(diffs[0])


def read_pattern_csv(path, frequency_ghz: float = 60.0) -> RadiationPattern:
    """Load a pattern CSV and validate its grid.

    The frequency is not stored in the file; it is supplied here and
    only matters once the pattern meets a propagation model.
    """
    try:
        fh = open(path, newline="")
    except FileNotFoundError:
        raise InvalidConfigError(f"pattern file not found: {path}") from None
    with fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise InvalidConfigError(f"{path}: empty pattern file") from None
        if tuple(h.strip() for h in header) != CSV_HEADER:
            raise InvalidConfigError(
                f"{path}: expected header {','.join(CSV_HEADER)}, "
                f"got {','.join(header)}"
            )
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 6:
                raise InvalidConfigError(
                    f"{path}:{lineno}: expected 6 columns, got {len(row)}"
                )
            try:
                rows.append([float(v) for v in row])
            except ValueError as exc:
                raise InvalidConfigError(f"{path}:{lineno}: {exc}") from None
    if not rows:
        raise InvalidConfigError(f"{path}: no pattern samples")

    data = np.asarray(rows)
    theta = np.unique(data[:, 0])
    phi = np.unique(data[:, 1])
    if theta.size * phi.size != data.shape[0]:
        raise InvalidConfigError(
            f"{path}: {data.shape[0]} rows do not form a complete "
            f"{theta.size} x {phi.size} grid"
        )
    d_theta = _uniform_spacing(theta, "theta") if theta.size > 1 else 2.0 * theta[0]
    d_phi = _uniform_spacing(phi, "phi") if phi.size > 1 else 360.0
    n_theta = 180.0 / d_theta
    if abs(n_theta - theta.size) > 1e-6 or not math.isclose(
        theta[0], 0.5 * d_theta, abs_tol=1e-9
    ):
        raise InvalidResolutionError(
            f"{path}: theta must sample cell midpoints of a uniform grid "
            "covering (0, 180)"
        )
    if abs(360.0 / d_phi - phi.size) > 1e-6 or abs(phi[0]) > 1e-9:
        raise InvalidResolutionError(
            f"{path}: phi must sample uniform nodes covering [0, 360)"
        )

    e_theta = np.zeros((theta.size, phi.size), dtype=complex)
    e_phi = np.zeros_like(e_theta)
    ti = np.searchsorted(theta, data[:, 0])
    pj = np.searchsorted(phi, data[:, 1])
    seen = np.zeros((theta.size, phi.size), dtype=bool)
    seen[ti, pj] = True
    if not seen.all():
        raise InvalidConfigError(
            f"{path}: grid has duplicate rows masking missing samples"
        )
    e_theta[ti, pj] = data[:, 2] + 1j * data[:, 3]
    e_phi[ti, pj] = data[:, 4] + 1j * data[:, 5]
    return RadiationPattern(
        theta_deg=theta,
        phi_deg=phi,
        e_theta=e_theta,
        e_phi=e_phi,
        frequency_ghz=frequency_ghz,
    )
