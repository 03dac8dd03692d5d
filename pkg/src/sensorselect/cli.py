"""Command line front end.

Exit codes: 0 on success, 1 when a run fails part way, 2 for invalid
arguments or refused instances. Output files land in --out, or in the
directory named by the SENSORSELECT_OUT environment variable, or in ./out.
"""

import argparse
import math
import os
import sys
from pathlib import Path

import numpy as np

from .experiment import (
    ALGORITHMS,
    ExperimentConfig,
    MethodSpec,
    aggregate,
    dump_matrix_csv,
    generate_candidates,
    load_matrix_csv,
    run_experiment,
    write_results_csv,
    write_summary_json,
)
from .oracle import MAX_ENUMERATED_SUBSETS, exhaustive_best
from .selectors import (
    common_greedy,
    elite_randomized_group_greedy,
    group_greedy,
    randomized_group_greedy,
)
from .sketch import SketchConfig, spawn_seed

OUT_ENV = "SENSORSELECT_OUT"


def _out_dir(value):
    return Path(value or os.environ.get(OUT_ENV) or "out")


def _build_methods(args):
    chosen = args.method or list(ALGORITHMS)
    specs = []
    for name in chosen:
        if name == "greedy":
            specs.append(MethodSpec("greedy"))
        elif name == "gg":
            specs.append(MethodSpec("gg", L=args.L))
        elif name == "rgg":
            specs.append(
                MethodSpec("rgg", L=args.L, n_s=args.ns, shared_sketch=args.shared_sketch)
            )
        else:
            specs.append(
                MethodSpec(
                    "ergg", L=args.L, n_s=args.ns, n_e=args.ne, shared_sketch=args.shared_sketch
                )
            )
    return tuple(specs)


def _sweep_methods(args):
    axis = args.axis
    algo = args.method or {"L": "gg", "ns": "rgg", "ne": "ergg"}[axis]
    if axis == "ns" and algo not in ("rgg", "ergg"):
        raise ValueError("axis 'ns' applies to the sketched methods rgg and ergg")
    if axis == "ne" and algo != "ergg":
        raise ValueError("axis 'ne' applies to ergg only")
    if algo == "greedy":
        raise ValueError("sweeping applies to the group methods, not greedy")
    specs = [MethodSpec("greedy")]
    for v in args.values:
        if v < 1:
            raise ValueError(f"swept values must be >= 1, got {v}")
        L = v if axis == "L" else args.L
        ns = v if axis == "ns" else args.ns
        ne = v if axis == "ne" else args.ne
        label = f"{algo}-{axis}{v}"
        if algo == "gg":
            specs.append(MethodSpec("gg", L=L, label=label))
        elif algo == "rgg":
            specs.append(
                MethodSpec("rgg", L=L, n_s=ns, shared_sketch=args.shared_sketch, label=label)
            )
        else:
            specs.append(
                MethodSpec(
                    "ergg", L=L, n_s=ns, n_e=ne, shared_sketch=args.shared_sketch, label=label
                )
            )
    return tuple(specs)


def _print_final(result):
    k = result.config.p_max
    for row in aggregate(result):
        if row["k"] == k:
            print(
                f"{row['method']}: mean objective {row['mean']:.6g} at p={k}, "
                f"mean evals {row['mean_eval_count']:.0f}, "
                f"mean time {row['mean_wall_time']:.4f}s over {row['trials']} trials"
            )


def _execute(args, methods):
    try:
        cfg = ExperimentConfig(
            args.n, args.r, args.p_max, args.trials, args.seed, methods, args.objective
        )
        matrix = load_matrix_csv(args.input) if getattr(args, "input", None) else None
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    out = _out_dir(args.out)

    def progress(t):
        print(f"trial {t + 1}/{cfg.trials} done", file=sys.stderr)

    try:
        result = run_experiment(cfg, threads=args.threads, matrix=matrix, progress=progress)
        out.mkdir(parents=True, exist_ok=True)
        write_results_csv(result, out / "results.csv")
        write_summary_json(result, out / "summary.json")
    except (ValueError, OSError, np.linalg.LinAlgError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {out / 'results.csv'}")
    print(f"wrote {out / 'summary.json'}")
    if result.failures:
        for f in result.failures:
            print(f"failed: trial {f.trial}, method {f.method}: {f.error}", file=sys.stderr)
        return 1
    _print_final(result)
    return 0


def cmd_run(args):
    try:
        methods = _build_methods(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return _execute(args, methods)


def cmd_sweep(args):
    try:
        methods = _sweep_methods(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return _execute(args, methods)


def cmd_oracle_check(args):
    try:
        if args.n < 1 or args.r < 1:
            raise ValueError(f"matrix shape ({args.n}, {args.r}) must be positive")
        if not 1 <= args.p <= args.n:
            raise ValueError(f"p must be in [1, {args.n}], got {args.p}")
        ns = args.ns if args.ns is not None else args.n
        if args.method in ("rgg", "ergg"):
            cfg = SketchConfig(ns, args.ne if args.method == "ergg" else 0)
            if cfg.n_s > args.n:
                raise ValueError(f"sketch size n_s={cfg.n_s} exceeds the {args.n} candidate rows")
        total = math.comb(args.n, args.p)
        if total > MAX_ENUMERATED_SUBSETS:
            raise ValueError(
                f"{args.n} choose {args.p} = {total} subsets exceeds the cap"
                f" {MAX_ENUMERATED_SUBSETS}"
            )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    try:
        U = generate_candidates(args.n, args.r, args.seed, 0)
        sel_seed = spawn_seed(args.seed, 1, 0)
        if args.method == "greedy":
            rep = common_greedy(U, args.p, args.objective)
        elif args.method == "gg":
            rep = group_greedy(U, args.p, args.objective, L=args.L)
        elif args.method == "rgg":
            rep = randomized_group_greedy(U, args.p, args.objective, ns, L=args.L, seed=sel_seed)
        else:
            rep = elite_randomized_group_greedy(
                U, args.p, args.objective, ns, args.ne, L=args.L, seed=sel_seed
            )
        best = exhaustive_best(U, args.p, args.objective)
    except (ValueError, np.linalg.LinAlgError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    sel = rep.subset
    print(f"{args.method}: subset {list(sel.canonical)} value {sel.value:.12g}")
    print(f"exhaustive: subset {list(best.canonical)} value {best.value:.12g}")
    if best.value > 0.0:
        print(f"ratio: {sel.value / best.value:.9f}")
    else:
        print("ratio: n/a (exhaustive optimum is 0)")
    print("match" if sel.canonical == best.canonical else "different subset")
    return 0


def cmd_dump_matrix(args):
    try:
        if args.n < 1 or args.r < 1:
            raise ValueError(f"matrix shape ({args.n}, {args.r}) must be positive")
        if args.trial < 0:
            raise ValueError(f"trial must be >= 0, got {args.trial}")
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out = _out_dir(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
        U = generate_candidates(args.n, args.r, args.seed, args.trial)
        path = out / "matrix.csv"
        dump_matrix_csv(U, path)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {path}")
    return 0


def _add_shared(sp, n=1000, r=10):
    sp.add_argument("--n", type=int, default=n, help="number of candidate rows")
    sp.add_argument("--r", type=int, default=r, help="columns per candidate row")
    sp.add_argument("--objective", choices=["d", "e"], default="e", help="objective kind")
    sp.add_argument("--seed", type=int, default=0, help="master seed")


def _add_run_like(sp):
    _add_shared(sp)
    sp.add_argument("--p-max", type=int, default=30, dest="p_max", help="largest subset size")
    sp.add_argument("--trials", type=int, default=50, help="number of random trials")
    sp.add_argument("--L", type=int, default=10, help="group capacity")
    sp.add_argument("--ns", type=int, default=100, help="sketch size for rgg/ergg")
    sp.add_argument("--ne", type=int, default=10, help="elite count for ergg")
    sp.add_argument(
        "--shared-sketch",
        action="store_true",
        help="draw one sketch per step instead of one per group member",
    )
    sp.add_argument("--threads", type=int, default=1, help="worker threads over trials")
    sp.add_argument("--input", help="CSV matrix to use in every trial instead of generating")
    sp.add_argument("--out", help="output directory (default $SENSORSELECT_OUT or ./out)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="sensorselect",
        description="Row subset selection benchmarks under determinant and eigenvalue objectives",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("run", help="benchmark the selectors over random trials")
    _add_run_like(sp)
    sp.add_argument(
        "--method",
        action="append",
        choices=list(ALGORITHMS),
        help="selector to run, repeatable (default: all four)",
    )
    sp.set_defaults(func=cmd_run)

    sp = sub.add_parser("sweep", help="rerun one selector while varying a parameter")
    _add_run_like(sp)
    sp.add_argument("--axis", choices=["L", "ns", "ne"], required=True, help="parameter to vary")
    sp.add_argument(
        "--values", type=int, nargs="+", required=True, help="values of the swept parameter"
    )
    sp.add_argument(
        "--method",
        choices=["gg", "rgg", "ergg"],
        help="selector to sweep (default depends on axis)",
    )
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("oracle-check", help="compare a selector against full enumeration")
    _add_shared(sp, n=10, r=3)
    sp.add_argument("--p", type=int, default=3, help="subset size")
    sp.add_argument("--method", choices=list(ALGORITHMS), default="gg", help="selector to check")
    sp.add_argument("--L", type=int, default=10, help="group capacity")
    sp.add_argument("--ns", type=int, default=None, help="sketch size (default: n)")
    sp.add_argument("--ne", type=int, default=2, help="elite count for ergg")
    sp.set_defaults(func=cmd_oracle_check)

    sp = sub.add_parser("dump-matrix", help="write one trial's candidate matrix as CSV")
    sp.add_argument("--n", type=int, default=1000, help="number of candidate rows")
    sp.add_argument("--r", type=int, default=10, help="columns per candidate row")
    sp.add_argument("--seed", type=int, default=0, help="master seed")
    sp.add_argument("--trial", type=int, default=0, help="trial index within the seed")
    sp.add_argument("--out", help="output directory (default $SENSORSELECT_OUT or ./out)")
    sp.set_defaults(func=cmd_dump_matrix)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
