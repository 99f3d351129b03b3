"""Experiment driver: SNR sweeps across methods, scenario validation, and
GA-vs-brute-force comparison. Emits sweep results as CSV with a frozen
header so the plotting front end can parse them.
"""

import argparse
import csv
import math
import os
import re
import sys
import tempfile
import time
from dataclasses import dataclass, replace

import numpy as np

from .baselines import fp_rsma_rates, noma_rates, sdma_rates
from .channel import load_scenario
from .errors import ConfigError, RsmaError
from .ga import run_parga
from .oracle import GridSpec, grid_search
from .precoding import build_precoders
from .rates import RateProblem, effective_gains, sum_rate

CSV_HEADER = [
    "theta1", "snr_db", "method", "repeat", "sum_rate", "r_common",
    "r_private_1", "r_private_2", "r_private_3", "runtime_ms", "seed",
]
METHODS = ("parga", "fp_rsma", "sdma", "noma", "oracle")
DEFAULT_SNR_DB = tuple(range(0, 31, 5))


@dataclass(frozen=True)
class SweepSpec:
    snr_db_list: tuple
    methods: tuple
    theta1_list: tuple
    repeats: int = 1
    grid_steps: int = 20
    n_workers: int = 1

    def __post_init__(self):
        if not self.snr_db_list or not self.methods or not self.theta1_list:
            raise ValueError("snr_db_list, methods and theta1_list must be nonempty")
        if self.repeats < 1:
            raise ValueError("repeats must be >= 1")
        for m in self.methods:
            if m not in METHODS:
                raise ValueError(f"unknown method {m!r}")


@dataclass(frozen=True)
class SweepRow:
    theta1: float
    snr_db: float
    method: str
    repeat: int
    sum_rate: float
    r_common: float
    r_private: tuple
    runtime_ms: float
    seed: int


def _q(x):
    # quantize to 12 significant digits so CSV rows round-trip exactly
    return float(f"{x:.12g}")


def _make_row(theta1, snr_db, method, repeat, report, runtime_ms, seed):
    rp = tuple(_q(r) for g in range(len(report.r_private)) for r in report.r_private[g])
    return SweepRow(
        theta1=_q(theta1),
        snr_db=_q(snr_db),
        method=method,
        repeat=repeat,
        sum_rate=_q(report.sum_rate),
        r_common=_q(sum(report.r_common)),
        r_private=rp,
        runtime_ms=_q(runtime_ms),
        seed=seed,
    )


def write_rows(rows, out_path):
    """Write sweep rows as CSV atomically (temp file + rename)."""
    out_dir = os.path.dirname(os.path.abspath(out_path))
    fd, tmp = tempfile.mkstemp(prefix=".sweep-", suffix=".csv", dir=out_dir)
    try:
        with os.fdopen(fd, "w", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(CSV_HEADER)
            for row in rows:
                rp = list(row.r_private[:3]) + [""] * (3 - len(row.r_private[:3]))
                writer.writerow([
                    f"{row.theta1:.12g}", f"{row.snr_db:.12g}", row.method, row.repeat,
                    f"{row.sum_rate:.12g}", f"{row.r_common:.12g}",
                    *(f"{r:.12g}" if r != "" else "" for r in rp),
                    f"{row.runtime_ms:.12g}", row.seed,
                ])
        os.replace(tmp, out_path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_rows(path):
    """Parse a sweep CSV back into SweepRow objects."""
    rows = []
    with open(path, newline="") as f:
        reader = csv.reader(f)
        header = next(reader)
        if header != CSV_HEADER:
            raise ConfigError(f"unexpected CSV header {header}")
        for rec in reader:
            rp = tuple(float(v) for v in rec[6:9] if v != "")
            rows.append(SweepRow(
                theta1=float(rec[0]), snr_db=float(rec[1]), method=rec[2],
                repeat=int(rec[3]), sum_rate=float(rec[4]), r_common=float(rec[5]),
                r_private=rp, runtime_ms=float(rec[9]), seed=int(rec[10]),
            ))
    return rows


def _base_seed(scenario):
    env = os.environ.get("RSMA_SEED")
    return int(env) if env is not None else scenario.ga.seed


def run_sweep(scenario_path, sweep, out_path, theta2_list=None):
    """One SweepRow per (theta1, SNR, method, repeat); returns a summary of
    per-method mean sum rates and the PARGA-over-FP-RSMA gain per SNR."""
    scenario = load_scenario(scenario_path)
    base_seed = _base_seed(scenario)
    rows = []
    for it, theta1 in enumerate(sweep.theta1_list):
        theta2 = theta2_list[it] if theta2_list else 2.0 * theta1
        sc = scenario.with_params(theta1=theta1, theta2=theta2)
        precoders = build_precoders(
            sc.channels, sc.params, sc.common_precoder_strategy, sc.precoder_seed
        )
        gains = effective_gains(sc.channels, precoders, sc.params)
        n0 = sc.params.noise_power
        for snr_db in sweep.snr_db_list:
            pt = n0 * 10.0 ** (snr_db / 10.0)
            params = replace(sc.params, total_power=pt)
            problem = RateProblem(gains, n0, pt, params.user_sets)
            for method in sweep.methods:
                for rep in range(sweep.repeats):
                    seed = base_seed + rep if method == "parga" else base_seed
                    t0 = time.perf_counter()
                    if method == "parga":
                        cfg = replace(sc.ga, seed=seed)
                        result = run_parga(problem, cfg, n_workers=sweep.n_workers)
                        report = sum_rate(result.best_alloc, gains, n0, params)
                    elif method == "oracle":
                        alloc, _ = grid_search(problem, GridSpec(steps=sweep.grid_steps))
                        report = sum_rate(alloc, gains, n0, params)
                    elif method == "fp_rsma":
                        report = fp_rsma_rates(sc.channels, precoders, params).report
                    elif method == "sdma":
                        report = sdma_rates(sc.channels, precoders, params).report
                    else:
                        report = noma_rates(sc.channels, params).report
                    ms = (time.perf_counter() - t0) * 1e3
                    rows.append(_make_row(theta1, snr_db, method, rep, report, ms, seed))

    rows.sort(key=lambda r: (r.theta1, r.snr_db, r.method, r.repeat))
    write_rows(rows, out_path)
    return summarize(rows)


def summarize(rows):
    """Per-(theta1, snr, method) mean sum rate, plus the PARGA vs FP-RSMA
    relative gain where both are present."""
    means = {}
    for row in rows:
        means.setdefault((row.theta1, row.snr_db, row.method), []).append(row.sum_rate)
    means = {key: float(np.mean(v)) for key, v in means.items()}
    gains = {}
    for (theta1, snr_db, method), value in means.items():
        if method == "parga" and (theta1, snr_db, "fp_rsma") in means:
            fp = means[(theta1, snr_db, "fp_rsma")]
            gains[(theta1, snr_db)] = (value - fp) / fp if fp > 0 else math.inf
    return {"mean_sum_rate": means, "parga_gain_over_fp": gains}


def validate(scenario_path):
    """Check that a scenario parses and its ZF precoders exist; returns a
    report dict with ok flag, messages, and the effective-gain table."""
    messages = []
    try:
        scenario = load_scenario(scenario_path)
    except RsmaError as exc:
        return {"ok": False, "messages": [f"scenario: {exc}"], "gains": None}
    try:
        precoders = build_precoders(
            scenario.channels, scenario.params,
            scenario.common_precoder_strategy, scenario.precoder_seed,
        )
    except RsmaError as exc:
        return {"ok": False, "messages": [f"precoding: {exc}"], "gains": None}
    gains = effective_gains(scenario.channels, precoders, scenario.params)
    messages.append("scenario parsed and ZF precoders feasible")
    return {"ok": True, "messages": messages, "gains": gains}


def compare_oracle(scenario_path, snr_db, grid_steps, n_workers=1):
    """Run the grid oracle and PARGA on the same problem; report both
    optima and the relative gap (oracle - parga) / oracle."""
    scenario = load_scenario(scenario_path)
    precoders = build_precoders(
        scenario.channels, scenario.params,
        scenario.common_precoder_strategy, scenario.precoder_seed,
    )
    gains = effective_gains(scenario.channels, precoders, scenario.params)
    n0 = scenario.params.noise_power
    pt = n0 * 10.0 ** (snr_db / 10.0)
    problem = RateProblem(gains, n0, pt, scenario.params.user_sets)
    _, oracle_best = grid_search(problem, GridSpec(steps=grid_steps))
    cfg = replace(scenario.ga, seed=_base_seed(scenario))
    result = run_parga(problem, cfg, n_workers=n_workers)
    gap = (oracle_best - result.best_fitness) / oracle_best if oracle_best > 0 else 0.0
    return {
        "oracle_best": oracle_best,
        "parga_best": result.best_fitness,
        "relative_gap": gap,
        "grid_steps": grid_steps,
        "generations_run": result.generations_run,
    }


# --- argument parsing -------------------------------------------------------

_ANGLE_RE = re.compile(r"^\s*(\d*\.?\d*)\s*\*?\s*pi\s*(?:/\s*(\d+\.?\d*))?\s*$")


def parse_angle(text):
    """Angles as plain floats or pi fractions: 'pi/9', '8pi/9', '0.35'."""
    m = _ANGLE_RE.match(text)
    if m:
        coef = float(m.group(1)) if m.group(1) else 1.0
        den = float(m.group(2)) if m.group(2) else 1.0
        return coef * math.pi / den
    return float(text)


def parse_snr_list(text):
    """SNR grids as 'start:stop:step' (inclusive) or comma-separated values."""
    if ":" in text:
        start, stop, step = (float(p) for p in text.split(":"))
        if step <= 0:
            raise ValueError("SNR step must be > 0")
        n = int(math.floor((stop - start) / step + 1e-9)) + 1
        return tuple(start + i * step for i in range(n))
    return tuple(float(p) for p in text.split(","))


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="rsma-parga",
        description="Downlink RSMA sum-rate experiments with GA power allocation",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="run an SNR sweep and write a CSV")
    sweep.add_argument("--scenario", required=True)
    sweep.add_argument("--snr", default="0:30:5", help="dB grid, start:stop:step or list")
    sweep.add_argument("--theta1", default="pi/9", help="comma list, e.g. pi/9,8pi/9")
    sweep.add_argument("--theta2", default=None, help="comma list; default 2*theta1")
    sweep.add_argument("--methods", default="parga,fp_rsma,sdma,noma")
    sweep.add_argument("--repeats", type=int, default=1)
    sweep.add_argument("--grid-steps", type=int, default=20)
    sweep.add_argument("--workers", type=int, default=1)
    sweep.add_argument("--out", required=True)

    val = sub.add_parser("validate", help="check a scenario file and ZF feasibility")
    val.add_argument("--scenario", required=True)

    orc = sub.add_parser("oracle", help="compare PARGA against the grid oracle")
    orc.add_argument("--scenario", required=True)
    orc.add_argument("--snr-db", type=float, default=20.0)
    orc.add_argument("--grid-steps", type=int, default=20)
    orc.add_argument("--workers", type=int, default=1)

    return parser


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "sweep":
            spec = SweepSpec(
                snr_db_list=parse_snr_list(args.snr),
                methods=tuple(m.strip() for m in args.methods.split(",")),
                theta1_list=tuple(parse_angle(t) for t in args.theta1.split(",")),
                repeats=args.repeats,
                grid_steps=args.grid_steps,
                n_workers=args.workers,
            )
            theta2_list = (
                tuple(parse_angle(t) for t in args.theta2.split(",")) if args.theta2 else None
            )
            summary = run_sweep(args.scenario, spec, args.out, theta2_list)
            print(f"wrote {args.out}")
            for (theta1, snr_db, method), mean in sorted(summary["mean_sum_rate"].items()):
                print(f"theta1={theta1:.6g} snr={snr_db:g}dB {method:8s} mean sum rate {mean:.6f}")
            for (theta1, snr_db), gain in sorted(summary["parga_gain_over_fp"].items()):
                print(f"theta1={theta1:.6g} snr={snr_db:g}dB parga gain over fp_rsma {gain:+.2%}")
            return 0
        if args.command == "validate":
            report = validate(args.scenario)
            for msg in report["messages"]:
                print(msg)
            if report["gains"] is not None:
                gains = report["gains"]
                for g, users in enumerate(gains.users):
                    print(f"channel {g + 1}: users {[k + 1 for k in users]}")
                    print(f"  common gains:  {np.array2string(gains.g_common[g], precision=6)}")
                    print(f"  private gains:\n{np.array2string(gains.g_private[g], precision=6)}")
            return 0 if report["ok"] else 1
        report = compare_oracle(args.scenario, args.snr_db, args.grid_steps, args.workers)
        print(f"grid oracle ({report['grid_steps']} steps): {report['oracle_best']:.9f}")
        print(f"parga ({report['generations_run']} generations):  {report['parga_best']:.9f}")
        print(f"relative gap (oracle - parga)/oracle: {report['relative_gap']:+.3e}")
        return 0
    except RsmaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
