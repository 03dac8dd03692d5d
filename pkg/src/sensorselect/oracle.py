"""Brute-force reference implementations for small instances.

Everything here is written the slow, obvious way on purpose: no cached
state, no incremental identities. The selectors are tested against these.
"""

import itertools
import math

import numpy as np

from .objectives import ObjectiveKind, as_matrix, check_subset
from .selectors import ScoredSubset

MAX_ENUMERATED_SUBSETS = 10_000_000


def naive_eval(U, indices, kind) -> float:
    """Objective of one subset, computed from the definition."""
    U = as_matrix(U)
    n, r = U.shape
    kind = ObjectiveKind.coerce(kind)
    idx = check_subset(indices, n)
    p = len(idx)
    if p == 0:
        raise ValueError("the objective of an empty subset is not defined")
    C = U[list(idx)]
    M = C @ C.T if p <= r else C.T @ C
    if kind is ObjectiveKind.D:
        val = float(np.linalg.det(M))
    else:
        val = float(np.linalg.eigvalsh(M)[0])
    if val < 0.0:
        tol = 1e-12 * max(1.0, abs(val))
        if val < -tol:
            raise ValueError(f"subset product matrix gave negative value {val:.6e}")
        val = 0.0
    return val


def exhaustive_best(U, p, kind, limit=MAX_ENUMERATED_SUBSETS) -> ScoredSubset:
    """The globally best subset of size p, by enumerating all of them.

    Subsets are visited in lexicographic order and ties keep the first one
    seen, so the winner is the lexicographically smallest maximizer. Refuses
    instances with more than ``limit`` subsets.
    """
    U = as_matrix(U)
    n, _ = U.shape
    kind = ObjectiveKind.coerce(kind)
    p = int(p)
    if not 1 <= p <= n:
        raise ValueError(f"subset size p must be in [1, {n}], got {p}")
    total = math.comb(n, p)
    if total > limit:
        raise ValueError(
            f"refusing to enumerate {total} subsets ({n} choose {p}); the cap is {limit}"
        )
    best_val = -math.inf
    best = None
    for combo in itertools.combinations(range(n), p):
        v = naive_eval(U, combo, kind)
        if v > best_val:
            best_val = v
            best = combo
    return ScoredSubset(best, best_val)
