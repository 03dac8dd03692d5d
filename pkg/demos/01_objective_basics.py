"""
Scoring a row subset
====================

Two scores are supported for a subset of rows C taken from a candidate
matrix U. While the subset is small the score looks at C C^T; once it has
more rows than columns it switches to C^T C. The determinant score rewards
overall volume, the smallest-eigenvalue score rewards the weakest direction.
"""

import numpy as np

from sensorselect import build_state, eval_direct, eval_extended, generate_candidates

U = generate_candidates(12, 4, seed=0)
print("candidate matrix:", U.shape)

# score a small subset both ways
subset = [0, 3, 7]
print("subset", subset)
print("  det score :", eval_direct(U, subset, "d"))
print("  eig score :", eval_direct(U, subset, "e"))

# past the crossover the Gram side flips but the call looks the same
subset = [0, 1, 3, 5, 7, 9]
print("subset", subset)
print("  det score :", eval_direct(U, subset, "d"))
print("  eig score :", eval_direct(U, subset, "e"))

# incremental evaluation reuses a cached factorization of the current
# subset, so trying every candidate row is much cheaper than rescoring
# from scratch, and agrees with it
state = build_state(U, [0, 3, 7])
for j in (1, 5, 11):
    fast = eval_extended(U, state, j, "d")
    slow = eval_direct(U, [0, 3, 7, j], "d")
    print(f"add row {j:2d}: incremental {fast:.12g}  direct {slow:.12g}")
