"""Command-line entry points: construct, analyze, simulate.

construct  binary base matrix -> greedy lifting, written as a compact
           quasi-cyclic nbalist file plus a JSON construction report.
analyze    any matrix file (base text, full or compact nbalist) -> rate
           bound, degree profile, distance ceiling, girth, cycle/ACE
           spectrum.
simulate   compact/full nbalist + JSON simulation config -> frame-error
           results plus a reproducibility manifest.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import __version__
from .alist_io import (
    AlistFormatError,
    RunManifest,
    load_matrix_file,
    parse_qc,
    serialize_qc,
    sha256_of_file,
)
from .base_graph import BaseMatrix, all_cycles, cycle_ace, girth, validate
from .channel import CodeInstance, SimConfig, run_monte_carlo
from .lifter import (
    ConstructionConfig,
    Lifting,
    cycle_eliminated,
    distance_upper_bound,
    expanded_girth,
    greedy_lift,
    rate_lower_bound,
)

# codes whose distance ceiling falls below this are flagged as floor-prone
LOW_DISTANCE_THRESHOLD = 100

DEFAULT_SEED = 0


def _fmt_girth(g: float) -> str:
    return "inf" if math.isinf(g) else str(int(g))


def _fmt_ace(values) -> str:
    return "(" + ", ".join("inf" if math.isinf(v) else str(int(v)) for v in values) + ")"


# ----------------------------------------------------------------------
# construct
# ----------------------------------------------------------------------
def cmd_construct(args) -> int:
    base = BaseMatrix.from_file(args.base)
    if args.seed is None:
        args.seed = DEFAULT_SEED
        print(f"seed defaulted to {DEFAULT_SEED}")
    cfg = ConstructionConfig(
        s=args.s,
        q=args.q,
        depth=args.depth,
        trials_per_edge=args.trials,
        rng_seed=args.seed,
        cycle_cap=args.cycle_cap,
    )
    lifting, report = greedy_lift(base, cfg)

    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(serialize_qc(lifting))
    report_path = args.out + ".report.json"
    with open(report_path, "w", encoding="utf-8") as fh:
        json.dump(report.to_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")

    n_symbols = base.n * cfg.s
    k_floor = n_symbols - base.m * cfg.s
    print(f"wrote {args.out} and {report_path}")
    print(f"N={n_symbols} K>={k_floor} q={cfg.q} s={cfg.s}")
    print(f"ace vector: {_fmt_ace(report.ace.values)}")
    print(f"expanded girth: {_fmt_girth(report.expanded_girth)}")
    for length, (unelim, elim) in sorted(report.cycle_counts.items()):
        print(f"length {length}: {elim} eliminated, {unelim} surviving")
    return 0


# ----------------------------------------------------------------------
# analyze
# ----------------------------------------------------------------------
def _analyze_base(base: BaseMatrix, depth: int, lifting: Lifting | None) -> None:
    diag = validate(base)
    print(f"base matrix: {diag.m} x {diag.n}")
    rate = rate_lower_bound(base)
    print(f"rate lower bound: {rate} ({float(rate):.4f})")
    degrees = sorted(set(diag.column_degrees))
    profile = ", ".join(
        f"{d}x{diag.column_degrees.count(d)}" for d in degrees
    )
    print(f"column weights: {profile}")
    for note in diag.warnings:
        print(f"warning: {note}")
    if diag.column_regular and diag.column_weight is not None and diag.column_weight >= 1:
        bound = distance_upper_bound(diag.column_weight, diag.m)
        print(f"distance upper bound: {bound}")
        if bound <= LOW_DISTANCE_THRESHOLD:
            print(
                f"warning: distance upper bound {bound} <= {LOW_DISTANCE_THRESHOLD}; "
                "error-floor prone"
            )
    print(f"base girth: {_fmt_girth(girth(base))}")

    cycles = all_cycles(base, depth)
    for length in range(4, depth + 1, 2):
        of_len = [c for c in cycles if c.length == length]
        if not of_len:
            print(f"length {length}: no cycles")
            continue
        aces = [cycle_ace(base, c) for c in of_len]
        line = f"length {length}: {len(of_len)} cycles, min ACE {min(aces)}"
        if lifting is not None:
            surviving = [
                cycle_ace(base, c) for c in of_len if not cycle_eliminated(lifting, c)
            ]
            if surviving:
                line += f"; {len(surviving)} surviving, min ACE {min(surviving)}"
            else:
                line += "; all eliminated (e = inf)"
        print(line)


def cmd_analyze(args) -> int:
    obj = load_matrix_file(args.matrix)
    if isinstance(obj, BaseMatrix):
        _analyze_base(obj, args.depth, None)
        return 0
    if isinstance(obj, Lifting):
        _analyze_base(obj.base, args.depth, obj)
        print(f"circulant size: {obj.s}, field order: {obj.field.q}")
        print(f"expanded girth: {_fmt_girth(expanded_girth(obj))}")
        return 0
    field, h = obj
    code = CodeInstance(field, h)
    print(f"expanded matrix: {h.shape[0]} x {h.shape[1]} over GF({field.q})")
    print(f"N={code.n} K={code.k} rank={code.rank} rate={code.rate:.4f}")
    print(f"girth: {_fmt_girth(girth(h))}")
    return 0


# ----------------------------------------------------------------------
# simulate
# ----------------------------------------------------------------------
def _load_sim_config(path) -> SimConfig:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    known = {
        "modulation",
        "snr_db",
        "max_frames",
        "max_errors",
        "decoder_max_iterations",
        "seed",
    }
    unknown = set(data) - known
    if unknown:
        raise ValueError(f"unknown simulation config keys: {sorted(unknown)}")
    return SimConfig(
        modulation=data["modulation"],
        snr_db=tuple(data["snr_db"]),
        max_frames=data["max_frames"],
        max_errors=data.get("max_errors", data["max_frames"]),
        decoder_max_iterations=data.get("decoder_max_iterations", 30),
        rng_seed=data.get("seed", DEFAULT_SEED),
    )


def cmd_simulate(args) -> int:
    obj = load_matrix_file(args.matrix)
    if isinstance(obj, Lifting):
        field, h = obj.field, obj.expand()
    elif isinstance(obj, BaseMatrix):
        raise ValueError("simulate needs a lifted matrix file, not a binary base matrix")
    else:
        field, h = obj
    cfg = _load_sim_config(args.config)
    code = CodeInstance(field, h)
    result = run_monte_carlo(code, cfg)

    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(result.to_text())
    manifest = RunManifest(
        command="simulate",
        artifact_version=__version__,
        seed=cfg.rng_seed,
        config={
            "modulation": cfg.modulation,
            "snr_db": list(cfg.snr_db),
            "max_frames": cfg.max_frames,
            "max_errors": cfg.max_errors,
            "decoder_max_iterations": cfg.decoder_max_iterations,
        },
        inputs={
            "matrix": {"path": str(args.matrix), "sha256": sha256_of_file(args.matrix)},
            "sim_config": {
                "path": str(args.config),
                "sha256": sha256_of_file(args.config),
            },
        },
    )
    manifest_path = args.out + ".manifest.json"
    with open(manifest_path, "w", encoding="utf-8") as fh:
        fh.write(manifest.to_json())
    print(f"wrote {args.out} and {manifest_path}")
    print(f"N={code.n} K={code.k} rate={code.rate:.4f}")
    print(result.to_text(), end="")
    return 0


# ----------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nbqc",
        description="non-binary quasi-cyclic LDPC construction, analysis and simulation",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="lift a binary base matrix")
    c.add_argument("base", help="base matrix text file ('m n' header then 0/1 rows)")
    c.add_argument("--s", type=int, required=True, help="circulant size")
    c.add_argument("--q", type=int, required=True, help="field order (power of 2)")
    c.add_argument("--depth", type=int, default=8, help="maximal cycle length (even)")
    c.add_argument("--trials", type=int, default=100, help="redraws per edge")
    c.add_argument("--seed", type=int, default=None, help="RNG seed (printed if defaulted)")
    c.add_argument("--cycle-cap", type=int, default=100_000, dest="cycle_cap")
    c.add_argument("--out", required=True, help="output nbalist path")
    c.set_defaults(func=cmd_construct)

    a = sub.add_parser("analyze", help="report code parameters of a matrix file")
    a.add_argument("matrix", help="base matrix text or nbalist file")
    a.add_argument("--depth", type=int, default=8, help="cycle spectrum depth")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("simulate", help="Monte-Carlo frame-error simulation")
    s.add_argument("matrix", help="nbalist file (compact or full)")
    s.add_argument("config", help="JSON simulation config")
    s.add_argument("--out", required=True, help="output results path")
    s.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, AlistFormatError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
