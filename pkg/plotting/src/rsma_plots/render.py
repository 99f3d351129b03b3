"""Render rsma-parga sweep CSVs into sum-rate vs SNR line figures.

The CSV schema is the frozen one emitted by `rsma-parga sweep`. This package
only parses that file; it never imports the simulator.
"""

import csv
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

EXPECTED_HEADER = [
    "theta1", "snr_db", "method", "repeat", "sum_rate", "r_common",
    "r_private_1", "r_private_2", "r_private_3", "runtime_ms", "seed",
]
THETA_MATCH_TOL = 1e-9


class PlotError(Exception):
    pass


class SchemaError(PlotError):
    pass


@dataclass(frozen=True)
class PlotSpec:
    input_csv: str
    output_image: str
    theta1_filter: float | None = None
    title: str = "Sum rate vs SNR"


@dataclass(frozen=True)
class Series:
    """Aggregated line for one method: mean over repeats plus min/max band."""

    method: str
    snr_db: tuple
    mean: tuple
    low: tuple
    high: tuple


def load_rows(path):
    with open(path, newline="") as f:
        reader = csv.reader(f)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: empty file") from None
        if header != EXPECTED_HEADER:
            missing = [c for c in EXPECTED_HEADER if c not in header]
            extra = [c for c in header if c not in EXPECTED_HEADER]
            raise SchemaError(
                f"{path}: unexpected columns (missing: {missing}, extra: {extra})"
            )
        rows = []
        for lineno, rec in enumerate(reader, start=2):
            try:
                rows.append({
                    "theta1": float(rec[0]),
                    "snr_db": float(rec[1]),
                    "method": rec[2],
                    "sum_rate": float(rec[4]),
                })
            except (IndexError, ValueError) as exc:
                raise SchemaError(f"{path}: line {lineno}: {exc}") from exc
    return rows


def aggregate(rows, theta1_filter=None):
    """Deterministic per-method series: mean sum rate per SNR across repeats,
    with the min and max across repeats as a band."""
    if theta1_filter is not None:
        rows = [r for r in rows if abs(r["theta1"] - theta1_filter) <= THETA_MATCH_TOL]
    if not rows:
        raise PlotError("no rows left after the theta1 filter")
    buckets = {}
    for r in rows:
        buckets.setdefault((r["method"], r["snr_db"]), []).append(r["sum_rate"])
    series = []
    for method in sorted({m for m, _ in buckets}):
        snrs = sorted(s for m, s in buckets if m == method)
        values = [buckets[(method, s)] for s in snrs]
        series.append(Series(
            method=method,
            snr_db=tuple(snrs),
            mean=tuple(sum(v) / len(v) for v in values),
            low=tuple(min(v) for v in values),
            high=tuple(max(v) for v in values),
        ))
    return series


def render(spec):
    """Write the figure and return the plotted series."""
    series = aggregate(load_rows(spec.input_csv), spec.theta1_filter)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for s in series:
        (line,) = ax.plot(s.snr_db, s.mean, marker="o", label=s.method)
        if s.method == "parga" and (s.low != s.mean or s.high != s.mean):
            ax.fill_between(s.snr_db, s.low, s.high, alpha=0.2, color=line.get_color())
    ax.set_xlabel("SNR (dB)")
    ax.set_ylabel("sum rate (bits/s/Hz)")
    ax.set_title(spec.title)
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(spec.output_image)
    plt.close(fig)
    return series
