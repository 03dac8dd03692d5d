"""Randomized-trial benchmark over many random instances.

Draws a fresh 1000x10 Gaussian matrix per trial, runs each method on it,
and averages the curves. Ten trials keep this quick; bump `trials` to 50
for the full picture. The pattern to look for: on the smallest-eigenvalue
score the sketched group methods pull ahead of greedy at larger subset
sizes, and adding elites to the sketch helps a bit more.
"""

from sensorselect import (
    ExperimentConfig,
    MethodSpec,
    aggregate,
    run_experiment,
)

methods = (
    MethodSpec("greedy"),
    MethodSpec("rgg", L=10, n_s=100),
    MethodSpec("ergg", L=10, n_s=100, n_e=10),
)
cfg = ExperimentConfig(
    n=1000, r=10, p_max=30, trials=10, master_seed=42,
    methods=methods, objective="e",
)
result = run_experiment(cfg, threads=4)

rows = {(row["method"], row["k"]): row for row in aggregate(result)}
print("mean smallest-eigenvalue score, 10 trials")
print(f"{'size':>4} {'greedy':>10} {'rgg':>10} {'ergg':>10}")
for k in (5, 10, 15, 20, 25, 30):
    line = " ".join(f"{rows[(m, k)]['mean']:10.4f}" for m in ("greedy", "rgg", "ergg"))
    print(f"{k:>4} {line}")

print()
print("mean evaluations per trial at size 30:")
for m in ("greedy", "rgg", "ergg"):
    print(f"  {m:<8} {rows[(m, 30)]['mean_eval_count']:12.1f}")
