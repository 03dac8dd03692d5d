"""Benchmark harness: run several selectors over many random trials.

A trial draws one candidate matrix, runs every configured method on it with
a shared per-trial selector seed, and records the objective curve, the
evaluation count, and the wall time of each method. Trials are independent,
so they can be spread over worker threads without changing any number in
the output.
"""

import csv
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.special import ndtri

from .objectives import ObjectiveKind, as_matrix
from .selectors import (
    common_greedy,
    elite_randomized_group_greedy,
    group_greedy,
    randomized_group_greedy,
)
from .sketch import spawn_seed, stream_rng

ALGORITHMS = ("greedy", "gg", "rgg", "ergg")


@dataclass(frozen=True)
class MethodSpec:
    """One selector to benchmark.

    algorithm is one of "greedy", "gg", "rgg", "ergg". The sketched
    algorithms need n_s, and "ergg" additionally n_e. label overrides the
    name used in result rows, which defaults to the algorithm name.
    """

    algorithm: str
    L: int = 10
    n_s: "int | None" = None
    n_e: "int | None" = None
    shared_sketch: bool = False
    label: "str | None" = None

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(
                f"unknown algorithm {self.algorithm!r}, expected one of {ALGORITHMS}"
            )
        if self.algorithm in ("rgg", "ergg") and self.n_s is None:
            raise ValueError(f"algorithm {self.algorithm!r} needs a sketch size n_s")
        if self.algorithm == "ergg" and self.n_e is None:
            raise ValueError("algorithm 'ergg' needs an elite count n_e")

    @property
    def name(self) -> str:
        return self.label if self.label else self.algorithm


def default_methods(L=10, n_s=100, n_e=10, shared_sketch=False):
    """The standard four-way comparison."""
    return (
        MethodSpec("greedy"),
        MethodSpec("gg", L=L),
        MethodSpec("rgg", L=L, n_s=n_s, shared_sketch=shared_sketch),
        MethodSpec("ergg", L=L, n_s=n_s, n_e=n_e, shared_sketch=shared_sketch),
    )


@dataclass(frozen=True)
class ExperimentConfig:
    n: int
    r: int
    p_max: int
    trials: int
    master_seed: int = 0
    methods: tuple = field(default_factory=default_methods)
    objective: str = "e"

    def __post_init__(self):
        if self.n < 1 or self.r < 1:
            raise ValueError(f"matrix shape ({self.n}, {self.r}) must be positive")
        if not 1 <= self.p_max <= self.n:
            raise ValueError(f"p_max must be in [1, {self.n}], got {self.p_max}")
        if self.trials < 1:
            raise ValueError(f"trial count must be >= 1, got {self.trials}")
        if not self.methods:
            raise ValueError("at least one method is required")
        names = [m.name for m in self.methods]
        if len(set(names)) != len(names):
            raise ValueError(f"method names must be unique, got {names}")
        ObjectiveKind.coerce(self.objective)


@dataclass
class TrialResult:
    method: str
    trial: int
    curve: list
    eval_count: int
    wall_time: float


@dataclass
class TrialFailure:
    method: str
    trial: int
    error: str


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    records: list
    failures: list


def generate_candidates(n, r, seed, trial=0):
    """The n x r standard normal candidate matrix of one trial under a seed.

    Draws 53-bit integers from a named stream, maps them to the open unit
    interval, and applies the inverse normal CDF. The result is bit-identical
    for a given (seed, trial) regardless of platform or thread count.
    """
    rng = stream_rng(seed, 0, trial)
    raw = rng.integers(0, 1 << 53, size=(int(n), int(r)), dtype=np.uint64)
    u = (raw.astype(np.float64) + 0.5) / float(1 << 53)
    return ndtri(u)


def _run_method(U, m: MethodSpec, p_max, kind, sel_seed):
    if m.algorithm == "greedy":
        return common_greedy(U, p_max, kind)
    if m.algorithm == "gg":
        return group_greedy(U, p_max, kind, L=m.L)
    if m.algorithm == "rgg":
        return randomized_group_greedy(
            U, p_max, kind, m.n_s, L=m.L, seed=sel_seed, shared_sketch=m.shared_sketch
        )
    return elite_randomized_group_greedy(
        U, p_max, kind, m.n_s, m.n_e, L=m.L, seed=sel_seed, shared_sketch=m.shared_sketch
    )


def run_experiment(cfg: ExperimentConfig, threads=1, matrix=None, progress=None):
    """Run every configured method over every trial.

    matrix, when given, replaces the generated candidates in every trial
    (selector seeds still vary per trial). progress, when given, is called
    with each finished trial index in order. All methods of a trial share
    one selector seed; if any method fails, the whole trial is dropped and
    the failure recorded, so aggregate rows always compare methods on
    identical trial sets.
    """
    kind = ObjectiveKind.coerce(cfg.objective)
    fixed = None
    if matrix is not None:
        fixed = as_matrix(matrix)
        if fixed.shape != (cfg.n, cfg.r):
            raise ValueError(
                f"matrix shape {fixed.shape} does not match configured ({cfg.n}, {cfg.r})"
            )

    def one_trial(t):
        U = fixed if fixed is not None else generate_candidates(cfg.n, cfg.r, cfg.master_seed, t)
        sel_seed = spawn_seed(cfg.master_seed, 1, t)
        recs = []
        for m in cfg.methods:
            try:
                rep = _run_method(U, m, cfg.p_max, kind, sel_seed)
            except (ValueError, np.linalg.LinAlgError) as exc:
                # drop the whole trial so every aggregate row covers the same trials
                return [], [TrialFailure(m.name, t, str(exc))]
            recs.append(TrialResult(m.name, t, list(rep.curve), rep.eval_count, rep.wall_time))
        return recs, []

    records, failures = [], []
    if threads <= 1:
        for t in range(cfg.trials):
            recs, fails = one_trial(t)
            records.extend(recs)
            failures.extend(fails)
            if progress:
                progress(t)
    else:
        with ThreadPoolExecutor(max_workers=int(threads)) as pool:
            for t, (recs, fails) in enumerate(pool.map(one_trial, range(cfg.trials))):
                records.extend(recs)
                failures.extend(fails)
                if progress:
                    progress(t)
    return ExperimentResult(cfg, records, failures)


def aggregate(result: ExperimentResult):
    """Per-method, per-size summary rows over the successful trials."""
    by = {}
    for rec in result.records:
        by.setdefault(rec.method, []).append(rec)
    rows = []
    for m in result.config.methods:
        recs = by.get(m.name)
        if not recs:
            continue
        curves = np.array([rec.curve for rec in recs], dtype=np.float64)
        evals = np.array([rec.eval_count for rec in recs], dtype=np.float64)
        walls = np.array([rec.wall_time for rec in recs], dtype=np.float64)
        for k in range(1, result.config.p_max + 1):
            col = curves[:, k - 1]
            geo = float(np.exp(np.log(col).mean())) if (col > 0.0).all() else 0.0
            rows.append(
                {
                    "method": m.name,
                    "k": k,
                    "trials": len(recs),
                    "mean": float(col.mean()),
                    "std": float(col.std()),
                    "min": float(col.min()),
                    "max": float(col.max()),
                    "geomean": geo,
                    "mean_eval_count": float(evals.mean()),
                    "mean_wall_time": float(walls.mean()),
                }
            )
    return rows


def write_results_csv(result: ExperimentResult, path):
    """Trial-level rows: method,trial,k,objective,evalCount,wallTime.

    The objective is written with 17 significant digits so the value
    round-trips exactly. evalCount and wallTime are per run and repeat on
    every k row of that run.
    """
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["method", "trial", "k", "objective", "evalCount", "wallTime"])
        for rec in result.records:
            for k, val in enumerate(rec.curve, start=1):
                w.writerow(
                    [rec.method, rec.trial, k, f"{val:.17g}", rec.eval_count, f"{rec.wall_time:.6f}"]
                )


def write_summary_json(result: ExperimentResult, path):
    """Config echo, aggregate rows, and any per-trial failures, as JSON."""
    cfg = result.config
    payload = {
        "config": {
            "n": cfg.n,
            "r": cfg.r,
            "p_max": cfg.p_max,
            "trials": cfg.trials,
            "master_seed": cfg.master_seed,
            "objective": ObjectiveKind.coerce(cfg.objective).value,
            "methods": [asdict(m) for m in cfg.methods],
        },
        "aggregate": aggregate(result),
        "failures": [asdict(f) for f in result.failures],
    }
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def dump_matrix_csv(U, path):
    """Write a candidate matrix as CSV with 17 significant digits per entry."""
    U = as_matrix(U)
    np.savetxt(path, U, delimiter=",", fmt="%.17g")


def load_matrix_csv(path):
    """Read a candidate matrix written by dump_matrix_csv."""
    return as_matrix(np.loadtxt(path, delimiter=",", ndmin=2))
