import numpy as np
import pytest

from sensorselect import (
    SketchConfig,
    compose_sketch,
    sample_without_replacement,
    spawn_seed,
    stream_rng,
)


def test_stream_rng_is_deterministic():
    a = stream_rng(7, 2, 3).integers(0, 1 << 30, size=8)
    b = stream_rng(7, 2, 3).integers(0, 1 << 30, size=8)
    assert (a == b).all()


def test_stream_rng_paths_are_independent():
    a = stream_rng(7, 2, 3).integers(0, 1 << 30, size=8)
    b = stream_rng(7, 2, 4).integers(0, 1 << 30, size=8)
    c = stream_rng(7, 2).integers(0, 1 << 30, size=8)
    d = stream_rng(8, 2, 3).integers(0, 1 << 30, size=8)
    assert not (a == b).all()
    assert not (a == c).all()
    assert not (a == d).all()


def test_spawn_seed_frozen_values():
    # frozen so that any change to the stream layout is loud
    assert spawn_seed(42, 1, 0) == 16602594785676215480
    assert spawn_seed(42, 1, 1) == 14845226843314568174
    assert spawn_seed(42, 0) == 16138347438539916964


def test_sketch_config_validation():
    cfg = SketchConfig(10, 3)
    assert cfg.n_r == 7
    with pytest.raises(ValueError):
        SketchConfig(0, 0)
    with pytest.raises(ValueError):
        SketchConfig(5, -1)
    with pytest.raises(ValueError):
        SketchConfig(5, 6)


def test_sample_basic_properties():
    pop = np.arange(100, 150)
    for seed in range(20):
        out = sample_without_replacement(pop, 12, stream_rng(seed, 2, 0))
        assert out.shape == (12,)
        assert (np.diff(out) > 0).all()
        assert np.isin(out, pop).all()


def test_sample_edge_counts():
    pop = np.arange(9)
    rng = stream_rng(0, 2, 0)
    assert sample_without_replacement(pop, 0, rng).size == 0
    full = sample_without_replacement(pop, 9, stream_rng(1, 2, 0))
    assert full.tolist() == list(range(9))
    with pytest.raises(ValueError):
        sample_without_replacement(pop, 10, rng)
    with pytest.raises(ValueError):
        sample_without_replacement(pop, -1, rng)


def test_sample_frozen_draw():
    out = sample_without_replacement(np.arange(50), 8, stream_rng(5, 2, 1))
    assert out.tolist() == [9, 18, 20, 24, 30, 39, 40, 47]


def test_sample_is_roughly_uniform():
    pop = np.arange(20)
    counts = np.zeros(20)
    m = 4000
    for s in range(m):
        counts[sample_without_replacement(pop, 5, stream_rng(s, 2, 0))] += 1
    freq = counts / m
    # each element should appear with frequency near 5/20
    assert abs(freq - 0.25).max() < 0.03


def test_compose_sketch_properties():
    allv = np.arange(40)
    elites = (3, 17, 25)
    cfg = SketchConfig(10, 3)
    for seed in range(10):
        sk = compose_sketch(allv, elites, cfg, stream_rng(seed, 4, 1))
        assert sk.shape == (10,)
        assert (np.diff(sk) > 0).all()
        assert np.isin(np.asarray(elites), sk).all()
        assert np.isin(sk, allv).all()


def test_compose_sketch_frozen_draws():
    sk = compose_sketch(np.arange(30), (), SketchConfig(6, 0), stream_rng(99, 2, 0))
    assert sk.tolist() == [2, 4, 11, 17, 24, 28]
    sk2 = compose_sketch(np.arange(30), (3, 17), SketchConfig(6, 2), stream_rng(99, 2, 0))
    assert sk2.tolist() == [2, 3, 5, 17, 25, 28]


def test_compose_sketch_validation():
    allv = np.arange(10)
    with pytest.raises(ValueError):
        compose_sketch(allv, (3,), SketchConfig(4, 2), stream_rng(0, 2, 0))
    with pytest.raises(ValueError):
        compose_sketch(allv, (99,), SketchConfig(4, 1), stream_rng(0, 2, 0))
    with pytest.raises(ValueError):
        # 12 non-elite slots but only 9 rows outside the elite set
        compose_sketch(allv, (0,), SketchConfig(13, 1), stream_rng(0, 2, 0))


def test_compose_sketch_full_size_is_everything():
    allv = np.arange(25)
    sk = compose_sketch(allv, (), SketchConfig(25, 0), stream_rng(3, 2, 0))
    assert sk.tolist() == allv.tolist()
