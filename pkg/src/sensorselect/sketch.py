"""Deterministic random streams and index sketching.

Every random draw in the package goes through a named stream derived from a
single integer seed, so results are reproducible across platforms and across
thread counts.
"""

from dataclasses import dataclass

import numpy as np


def stream_rng(seed, *path):
    """Generator for the stream identified by ``path`` under ``seed``.

    Uses Philox keyed through a SeedSequence spawn key, which is stable
    across numpy versions and platforms. Distinct paths give independent
    streams.
    """
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(p) for p in path))
    return np.random.Generator(np.random.Philox(ss))


def spawn_seed(seed, *path):
    """Derive a child integer seed for the stream identified by ``path``."""
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(p) for p in path))
    return int(ss.generate_state(1, np.uint64)[0])


@dataclass(frozen=True)
class SketchConfig:
    """Size parameters for a random candidate sketch.

    n_s is the total sketch size, n_e the number of fixed (elite) indices
    carried in every sketch. The remaining n_r = n_s - n_e indices are drawn
    uniformly without replacement.
    """

    n_s: int
    n_e: int = 0

    def __post_init__(self):
        if self.n_s < 1:
            raise ValueError(f"sketch size n_s must be >= 1, got {self.n_s}")
        if self.n_e < 0:
            raise ValueError(f"elite count n_e must be >= 0, got {self.n_e}")
        if self.n_e > self.n_s:
            raise ValueError(
                f"elite count n_e ({self.n_e}) cannot exceed sketch size n_s ({self.n_s})"
            )

    @property
    def n_r(self) -> int:
        return self.n_s - self.n_e


def sample_without_replacement(population, count, rng):
    """Draw ``count`` distinct values from ``population``, returned sorted.

    Partial Fisher-Yates on a copy of the population. Only the first
    ``count`` swap targets are drawn, so cost is O(len(population)) memory
    and O(count) random draws regardless of population size.
    """
    pop = np.asarray(population, dtype=np.intp)
    n = pop.size
    if count < 0:
        raise ValueError(f"sample count must be >= 0, got {count}")
    if count > n:
        raise ValueError(f"cannot draw {count} values from a population of {n}")
    if count == 0:
        return pop[:0].copy()
    pool = pop.copy()
    targets = rng.integers(low=np.arange(count), high=n)
    for i, j in enumerate(targets):
        pool[i], pool[j] = pool[j], pool[i]
    out = np.sort(pool[:count])
    return out


def compose_sketch(all_indices, elites, cfg: SketchConfig, rng):
    """Build one sketch: the elite indices plus n_r uniform draws from the rest.

    ``elites`` must be a subset of ``all_indices`` with exactly cfg.n_e
    entries. Result is sorted and has exactly cfg.n_s distinct indices.
    """
    allv = np.asarray(all_indices, dtype=np.intp)
    el = np.asarray(elites, dtype=np.intp)
    if el.size != cfg.n_e:
        raise ValueError(f"expected {cfg.n_e} elite indices, got {el.size}")
    if el.size and not np.isin(el, allv).all():
        raise ValueError("elite indices must belong to the candidate index set")
    rest = allv[~np.isin(allv, el)] if el.size else allv
    if cfg.n_r > rest.size:
        raise ValueError(
            f"sketch needs {cfg.n_r} non-elite indices but only {rest.size} are available"
        )
    drawn = sample_without_replacement(rest, cfg.n_r, rng)
    return np.sort(np.concatenate([el, drawn]))
