"""Text forms for complex numbers and the CSV/JSON artifact schemas.

Complex numbers appear in CLI flags and config as ``a+bi``, ``a-bi``,
``bi``, ``a`` or the ordered-pair form ``(a, b)`` (meaning a+bi); JSON
holds them as ``[re, im]``.  All floats are written with 17 significant
digits so every artifact re-parses to the exact in-memory value.
"""

from __future__ import annotations

import cmath
import csv
import json
import math
import re
from typing import Iterable, TextIO

from .mapcore import (
    STATUS_COMPLETED,
    STATUS_OVERFLOW,
    STATUS_UNDEFINED,
    MapParameters,
    Orbit,
)

_STATUS_RE = re.compile(r"^(Completed|UndefinedAtStep\((\d+)\)|OverflowAtStep\((\d+)\))$")


def fmt(x: float) -> str:
    """17 significant digits: lossless for IEEE doubles, locale independent."""
    return format(float(x), ".17g")


def parse_complex(text: str) -> complex:
    """Parse 'a+bi', 'a-bi', 'bi', 'a' or '(a, b)' into a complex number."""
    s = text.strip()
    if not s:
        raise ValueError("empty complex literal")
    if s.startswith("(") and s.endswith(")"):
        parts = s[1:-1].split(",")
        if len(parts) != 2:
            raise ValueError(f"pair form needs two components: {text!r}")
        z = complex(float(parts[0]), float(parts[1]))
    else:
        compact = s.replace(" ", "")
        try:
            z = complex(compact.replace("i", "j"))
        except ValueError:
            raise ValueError(f"cannot parse complex literal {text!r}") from None
    if not cmath.isfinite(z):
        raise ValueError(f"complex literal must be finite: {text!r}")
    return z


def format_complex(z: complex) -> str:
    """Canonical a+bi text form (17 significant digits per component)."""
    im = z.imag
    sign = "-" if math.copysign(1.0, im) < 0 else "+"
    return f"{fmt(z.real)}{sign}{fmt(abs(im))}i"


def complex_pair(z: complex) -> list[float]:
    return [z.real, z.imag]


def pair_complex(pair) -> complex:
    return complex(pair[0], pair[1])


def parse_status_text(text: str) -> tuple[str, int | None]:
    m = _STATUS_RE.match(text)
    if not m:
        raise ValueError(f"unknown orbit status {text!r}")
    if text == "Completed":
        return STATUS_COMPLETED, None
    kind = STATUS_UNDEFINED if text.startswith("Undefined") else STATUS_OVERFLOW
    step = int(m.group(2) or m.group(3))
    return kind, step


# ---------------------------------------------------------------------------
# orbit artifacts


def write_orbit_csv(orbit: Orbit, fp: TextIO) -> None:
    """Header n,re,im; one row per point; n starts at -1."""
    writer = csv.writer(fp, lineterminator="\n")
    writer.writerow(["n", "re", "im"])
    for k, z in enumerate(orbit.points):
        writer.writerow([k - 1, fmt(z.real), fmt(z.imag)])


def read_orbit_csv(fp: TextIO) -> list[tuple[int, complex]]:
    reader = csv.reader(fp)
    header = next(reader)
    if header != ["n", "re", "im"]:
        raise ValueError(f"unexpected orbit CSV header: {header}")
    return [(int(row[0]), complex(float(row[1]), float(row[2]))) for row in reader if row]


def orbit_to_dict(params: MapParameters, orbit: Orbit) -> dict:
    return {
        "alpha": complex_pair(params.alpha),
        "beta": complex_pair(params.beta),
        "status": orbit.status_text(),
        "points": [complex_pair(z) for z in orbit.points],
    }


def write_orbit_json(params: MapParameters, orbit: Orbit, fp: TextIO) -> None:
    json.dump(orbit_to_dict(params, orbit), fp, indent=2)
    fp.write("\n")


def read_orbit_json(fp: TextIO) -> tuple[MapParameters, Orbit]:
    data = json.load(fp)
    params = MapParameters(pair_complex(data["alpha"]), pair_complex(data["beta"]))
    status, step = parse_status_text(data["status"])
    orbit = Orbit([pair_complex(p) for p in data["points"]], status, step)
    return params, orbit


# ---------------------------------------------------------------------------
# cycle / lyapunov / sweep artifacts


def write_points_csv(points: Iterable[complex], fp: TextIO) -> None:
    """Representative cycle points: header k,re,im."""
    writer = csv.writer(fp, lineterminator="\n")
    writer.writerow(["k", "re", "im"])
    for k, z in enumerate(points):
        writer.writerow([k, fmt(z.real), fmt(z.imag)])


def read_points_csv(fp: TextIO) -> list[complex]:
    reader = csv.reader(fp)
    header = next(reader)
    if header != ["k", "re", "im"]:
        raise ValueError(f"unexpected points CSV header: {header}")
    return [complex(float(row[1]), float(row[2])) for row in reader if row]


def write_trace_csv(estimates: Iterable[float], renorm_interval: int, n_used: int, fp: TextIO) -> None:
    """Lyapunov convergence trace: header k,estimate with k the step count."""
    writer = csv.writer(fp, lineterminator="\n")
    writer.writerow(["k", "estimate"])
    estimates = list(estimates)
    for i, est in enumerate(estimates):
        k = min((i + 1) * renorm_interval, n_used)
        writer.writerow([k, fmt(est)])


def read_trace_csv(fp: TextIO) -> list[tuple[int, float]]:
    reader = csv.reader(fp)
    header = next(reader)
    if header != ["k", "estimate"]:
        raise ValueError(f"unexpected trace CSV header: {header}")
    return [(int(row[0]), float(row[1])) for row in reader if row]


SWEEP_CSV_HEADER = ["cell_re", "cell_im", "classification", "period", "lambda_max", "agree_fraction"]


def write_sweep_csv(cells, fp: TextIO) -> None:
    """One row per grid cell, row-major; empty fields for inapplicable values."""
    writer = csv.writer(fp, lineterminator="\n")
    writer.writerow(SWEEP_CSV_HEADER)
    for cell in cells:
        writer.writerow(
            [
                fmt(cell.center.real),
                fmt(cell.center.imag),
                cell.verdict,
                "" if cell.period is None else cell.period,
                "" if cell.lambda_max is None else fmt(cell.lambda_max),
                fmt(cell.agree_fraction),
            ]
        )


def read_sweep_csv(fp: TextIO) -> list[dict]:
    reader = csv.reader(fp)
    header = next(reader)
    if header != SWEEP_CSV_HEADER:
        raise ValueError(f"unexpected sweep CSV header: {header}")
    rows = []
    for row in reader:
        if not row:
            continue
        rows.append(
            {
                "center": complex(float(row[0]), float(row[1])),
                "classification": row[2],
                "period": None if row[3] == "" else int(row[3]),
                "lambda_max": None if row[4] == "" else float(row[4]),
                "agree_fraction": float(row[5]),
            }
        )
    return rows


def dumps_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"
