"""Subset selectors: plain greedy, group greedy, and sketched variants.

All selectors grow subsets one row at a time and report the objective of the
best subset found at every size. The group selectors keep the L best
distinct subsets alive instead of a single one; the sketched variants score
each group member only against a random subset of the candidate rows.
"""

import operator
import time
from dataclasses import dataclass, replace

import numpy as np

from .objectives import (
    ObjectiveKind,
    as_matrix,
    build_state,
    eval_extensions,
    extend_state,
)
from .sketch import SketchConfig, compose_sketch, stream_rng


@dataclass(frozen=True)
class ScoredSubset:
    """A subset in selection order together with its objective value."""

    indices: tuple
    value: float

    @property
    def canonical(self):
        return tuple(sorted(self.indices))


@dataclass
class SelectorReport:
    """What a selector run produced.

    curve[k-1] is the objective of the best subset of size k. eval_count is
    the number of candidate evaluations performed, wall_time the elapsed
    seconds. history, when requested, holds for each step the tuple of group
    member subsets (each in selection order) after that step.
    """

    subset: ScoredSubset
    curve: list
    eval_count: int
    wall_time: float
    history: "list | None" = None


def _check_size(p, n, name="p"):
    p = operator.index(p)
    if not 1 <= p <= n:
        raise ValueError(f"subset size {name} must be in [1, {n}], got {p}")
    return p


def _check_group(L):
    L = operator.index(L)
    if L < 1:
        raise ValueError(f"group capacity L must be >= 1, got {L}")
    return L


def _top_extensions(U, state, cands, L, kind):
    """The L best single-row extensions of state among cands.

    Returned as (value, candidate) pairs, best first; ties go to the smaller
    candidate index.
    """
    cands = np.asarray(cands, dtype=np.intp)
    vals = eval_extensions(U, state, cands, kind)
    order = np.lexsort((cands, -vals))[:L]
    return [(float(vals[i]), int(cands[i])) for i in order]


def _advance(U, state, j, value, kind):
    """Extend state by row j, pinning the cached determinant to value.

    The batch evaluation already computed the extended determinant; reusing
    that exact float keeps the reported curve and the cached state in perfect
    agreement, which in turn keeps later products of nondecreasing factors
    nondecreasing in floating point.
    """
    nxt = extend_state(U, state, j)
    if ObjectiveKind.coerce(kind) is ObjectiveKind.D:
        r = nxt.gram.shape[0]
        if nxt.size < r:
            nxt = replace(nxt, det_row=float(value))
        elif nxt.size == r:
            nxt = replace(nxt, det_row=float(value), det_gram=float(value))
        else:
            nxt = replace(nxt, det_gram=float(value))
    return nxt


def common_greedy(U, p, kind) -> SelectorReport:
    """Plain greedy: at each step add the row with the best extension value."""
    t0 = time.perf_counter()
    U = as_matrix(U)
    n, _ = U.shape
    kind = ObjectiveKind.coerce(kind)
    p = _check_size(p, n)
    state = build_state(U, ())
    remaining = np.arange(n)
    curve = []
    evals = 0
    for _ in range(p):
        ((v, c),) = _top_extensions(U, state, remaining, 1, kind)
        evals += int(remaining.size)
        state = _advance(U, state, c, v, kind)
        curve.append(v)
        remaining = remaining[remaining != c]
    wall = time.perf_counter() - t0
    return SelectorReport(ScoredSubset(state.indices, curve[-1]), curve, evals, wall)


def _group_core(
    U,
    p,
    kind,
    L,
    cfg,
    elites,
    seed,
    shared_sketch,
    collect_history,
    eval_count=0,
    t_start=None,
) -> SelectorReport:
    """Shared engine behind the group selectors.

    cfg is None for the unsketched variant (every member scans all rows
    outside its subset). Otherwise each member scores the rows of a sketch:
    the fixed elites plus uniform draws, composed per member from the stream
    (step, member) under seed, or once per step from stream (step,) when
    shared_sketch is set.
    """
    t0 = time.perf_counter() if t_start is None else t_start
    U = as_matrix(U)
    n, _ = U.shape
    kind = ObjectiveKind.coerce(kind)
    p = _check_size(p, n)
    L = _check_group(L)
    if cfg is not None and cfg.n_s > n:
        raise ValueError(f"sketch size n_s={cfg.n_s} exceeds the {n} candidate rows")
    all_idx = np.arange(n)
    elite_arr = np.asarray(elites, dtype=np.intp)

    # first step: one full scan seeds the group, sketched or not
    root = build_state(U, ())
    top = _top_extensions(U, root, all_idx, L, kind)
    eval_count += n
    members = [(_advance(U, root, c, v, kind), v) for v, c in top]
    curve = [members[0][1]]
    history = [tuple(st.indices for st, _ in members)] if collect_history else None

    for k in range(2, p + 1):
        shared = None
        if cfg is not None and shared_sketch:
            shared = compose_sketch(all_idx, elite_arr, cfg, stream_rng(seed, k))
        entries = []
        for l, (st, _v) in enumerate(members):
            taken = np.asarray(st.indices, dtype=np.intp)
            if cfg is None:
                pool = np.setdiff1d(all_idx, taken, assume_unique=True)
            else:
                sk = shared
                if sk is None:
                    sk = compose_sketch(all_idx, elite_arr, cfg, stream_rng(seed, k, l))
                pool = sk[~np.isin(sk, taken)]
            if pool.size == 0:
                continue
            vals = eval_extensions(U, st, pool, kind)
            eval_count += int(pool.size)
            order = np.lexsort((pool, -vals))[:L]
            for i in order:
                c = int(pool[i])
                entries.append((float(vals[i]), tuple(sorted(st.indices + (c,))), l, c))
        if not entries:
            raise ValueError(
                f"step {k}: every sketched row was already inside its group subset;"
                " increase the sketch size n_s or try another seed"
            )
        entries.sort(key=lambda e: (-e[0], e[1]))
        seen = set()
        fresh = []
        for v, canon, l, c in entries:
            if canon in seen:
                continue
            seen.add(canon)
            fresh.append((_advance(U, members[l][0], c, v, kind), v))
            if len(fresh) == L:
                break
        members = fresh
        curve.append(members[0][1])
        if collect_history:
            history.append(tuple(st.indices for st, _ in members))

    best_state, best_val = members[0]
    wall = time.perf_counter() - t0
    return SelectorReport(
        ScoredSubset(best_state.indices, best_val), curve, eval_count, wall, history
    )


def group_greedy(U, p, kind, L=10, collect_history=False) -> SelectorReport:
    """Group greedy: carry the L best distinct subsets, scanning all rows."""
    return _group_core(U, p, kind, L, None, (), 0, False, collect_history)


def randomized_group_greedy(
    U, p, kind, n_s, L=10, seed=0, shared_sketch=False, collect_history=False
) -> SelectorReport:
    """Group greedy where each member scores only a random sketch of n_s rows.

    With n_s equal to the number of rows this reduces to the unsketched
    group selector.
    """
    cfg = SketchConfig(operator.index(n_s), 0)
    return _group_core(U, p, kind, L, cfg, (), seed, shared_sketch, collect_history)


def select_elites(U, count, kind):
    """Greedy subset of the given size, in selection order; () for count 0."""
    count = operator.index(count)
    if count == 0:
        return ()
    return common_greedy(U, count, kind).subset.indices


def elite_randomized_group_greedy(
    U, p, kind, n_s, n_e, L=10, seed=0, shared_sketch=False, collect_history=False
) -> SelectorReport:
    """Randomized group greedy whose sketches always contain n_e elite rows.

    The elites are the greedy subset of size n_e, found once up front; its
    evaluations and time are included in the report. n_e of 0 reduces to the
    plain randomized selector on the same seed.
    """
    cfg = SketchConfig(operator.index(n_s), operator.index(n_e))
    if cfg.n_e == 0:
        return _group_core(U, p, kind, L, cfg, (), seed, shared_sketch, collect_history)
    t0 = time.perf_counter()
    elite_rep = common_greedy(U, cfg.n_e, kind)
    return _group_core(
        U,
        p,
        kind,
        L,
        cfg,
        elite_rep.subset.indices,
        seed,
        shared_sketch,
        collect_history,
        eval_count=elite_rep.eval_count,
        t_start=t0,
    )


def l_best_search(U, indices, L, kind, candidates=None):
    """The L best one-row extensions of an explicit subset.

    candidates defaults to every row outside the subset. Returns ScoredSubset
    objects, best first, ties to the smaller row index.
    """
    U = as_matrix(U)
    n, _ = U.shape
    L = _check_group(L)
    state = build_state(U, indices)
    if candidates is None:
        cand = np.setdiff1d(
            np.arange(n), np.asarray(state.indices, dtype=np.intp), assume_unique=True
        )
    else:
        cand = np.asarray(candidates, dtype=np.intp)
    if cand.size == 0:
        raise ValueError("no candidate rows available to extend the subset")
    top = _top_extensions(U, state, cand, L, kind)
    return [ScoredSubset(state.indices + (c,), v) for v, c in top]
