"""
Checking a selector against brute force
=======================================

On instances small enough to enumerate every subset, a wide group search
should land on the true optimum. This runs both on a handful of random
10x3 instances and reports any gap.
"""

from sensorselect import exhaustive_best, generate_candidates, group_greedy

n, r, p = 10, 3, 3
for seed in range(5):
    U = generate_candidates(n, r, seed=seed)
    truth = exhaustive_best(U, p, "d")
    rep = group_greedy(U, p, "d", L=220)
    hit = rep.subset.canonical == truth.indices
    print(
        f"seed {seed}: exhaustive {truth.value:.8g} at {truth.indices}, "
        f"group {rep.subset.value:.8g} at {rep.subset.canonical} "
        f"{'(match)' if hit else '(MISS)'}"
    )
