#!/usr/bin/env python3
# Run the four selectors on one instance and compare what they pick,
# what they score, and how much work they do.

from sensorselect import (
    common_greedy,
    elite_randomized_group_greedy,
    generate_candidates,
    group_greedy,
    randomized_group_greedy,
)

n, r, p = 400, 8, 20
U = generate_candidates(n, r, seed=5)

runs = [
    ("greedy", common_greedy(U, p, "e")),
    ("group L=10", group_greedy(U, p, "e", L=10)),
    ("sketched n_s=60", randomized_group_greedy(U, p, "e", n_s=60, L=10, seed=1)),
    ("elite n_e=8", elite_randomized_group_greedy(U, p, "e", n_s=60, n_e=8, L=10, seed=1)),
]

print(f"{n} rows, {r} columns, picking {p}, smallest-eigenvalue score")
print(f"{'method':<16} {'final score':>14} {'evals':>9} {'seconds':>8}")
for name, rep in runs:
    print(f"{name:<16} {rep.subset.value:14.6f} {rep.eval_count:9d} {rep.wall_time:8.3f}")

# greedy commits to one row per step; the group methods carry several
# partial subsets forward, which is why their counts are higher
print()
print("greedy picks :", common_greedy(U, p, "e").subset.indices)
print("group picks  :", group_greedy(U, p, "e", L=10).subset.indices)
