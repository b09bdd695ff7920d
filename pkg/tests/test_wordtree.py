import math

import numpy as np
import pytest

from cyganhdim.errors import ConfigurationError, DomainError, ResourceError
from cyganhdim.heisenberg import ORIGIN, Point, ReflectionGenerator, apply_reflection, cygan_distance
from cyganhdim.schottky import SchottkyConfig, rcircle_family, symmetric_family
from cyganhdim.wordtree import (
    build_level,
    check_reduced,
    enumerate_words,
    limit_set_sample,
    seed_tagpoints,
    word_count,
    word_levels,
)


def spread_config(m):
    """``m`` well separated chains on a circle, with assorted multipliers."""
    gens = []
    for k in range(m):
        w = complex(math.cos(2 * math.pi * k / m), math.sin(2 * math.pi * k / m))
        gens.append(ReflectionGenerator(Point(3 * w, 0.5 * k), 0.5 * (1 + 0.2 * k) * w))
    return SchottkyConfig(tuple(gens))


CONFIGS = {
    2: spread_config(2),
    3: symmetric_family(math.pi / 6),
    4: spread_config(4),
}


@pytest.mark.parametrize("m", [2, 3, 4])
def test_counts(m):
    cfg = CONFIGS[m]
    for k, level in enumerate(word_levels(cfg, 8), start=1):
        assert len(level) == m * (m - 1) ** (k - 1) == word_count(m, k)
        assert len(set(level.keys())) == len(level)
        for w in level.keys():
            check_reduced(w)


def test_word_count_rejects_depth_zero():
    with pytest.raises(DomainError):
        word_count(3, 0)


def test_seed_examples():
    cfg = SchottkyConfig((ReflectionGenerator(ORIGIN, 1), ReflectionGenerator(Point(5, 0), 1)))
    assert seed_tagpoints(cfg)[0] == Point(0.01, 0)
    s = seed_tagpoints(symmetric_family(math.pi / 6))[0]
    assert s.zeta == pytest.approx(2 / math.sqrt(3) + 0.01 / math.sqrt(3), abs=1e-14)
    assert s.v == pytest.approx(0, abs=1e-15)


def test_seed_offset_is_proportional_to_radius():
    cfg = rcircle_family(0.5)
    for g, s in zip(cfg.generators, seed_tagpoints(cfg)):
        assert cygan_distance(s, g.center) == pytest.approx(0.01 * g.radius, rel=1e-12)


def test_depth_one_is_seeds():
    cfg = symmetric_family(0.7)
    nodes = enumerate_words(cfg, 1)
    assert [n.word for n in nodes] == [(0,), (1,), (2,)]
    assert [n.tagpoint for n in nodes] == seed_tagpoints(cfg)
    assert limit_set_sample(cfg, 1) == seed_tagpoints(cfg)


def test_depth_three_count_and_order():
    nodes = enumerate_words(symmetric_family(0.7), 3)
    assert len(nodes) == 12
    # outer loop over the new first letter, inner loop over parents in order
    assert [n.word for n in nodes][:4] == [(0, 1, 0), (0, 1, 2), (0, 2, 0), (0, 2, 1)]
    assert [n.tag for n in nodes] == [0] * 4 + [1] * 4 + [2] * 4
    assert nodes[1].label() == "0-1-2"


def test_word_01_unrolls_once():
    cfg = symmetric_family(0.5)
    seeds = seed_tagpoints(cfg)
    node = {n.word: n for n in enumerate_words(cfg, 2)}[(0, 1)]
    expected = apply_reflection(cfg.generators[0], seeds[1])
    assert abs(node.tagpoint.zeta - expected.zeta) < 1e-15 and abs(node.tagpoint.v - expected.v) < 1e-15


@pytest.mark.parametrize("cfg", [CONFIGS[2], CONFIGS[3], CONFIGS[4], rcircle_family(0.4)], ids=["m2", "m3", "m4", "rcircle"])
def test_nesting(cfg):
    levels = list(word_levels(cfg, 6))
    for prev, level in zip(levels, levels[1:]):
        index = {w: i for i, w in enumerate(prev.keys())}
        for node in level.nodes():
            g = cfg.generators[node.word[0]]
            assert cygan_distance(node.tagpoint, g.center) < g.radius
            back = apply_reflection(g, node.tagpoint)
            i = index[node.word[1:]]
            assert abs(back.zeta - prev.zeta[i]) < 1e-9 and abs(back.v - prev.v[i]) < 1e-9


def sibling_diameter(level):
    groups = {}
    for node in level.nodes():
        groups.setdefault(node.word[:-1], []).append(node.tagpoint)
    return max(
        cygan_distance(a, b) for pts in groups.values() for i, a in enumerate(pts) for b in pts[i + 1 :]
    )


@pytest.mark.parametrize("cfg", [CONFIGS[3], CONFIGS[4], rcircle_family(0.5)], ids=["sym", "m4", "rcircle"])
def test_contraction(cfg):
    diam = [sibling_diameter(level) for level in list(word_levels(cfg, 7))[1:]]
    assert all(b < a for a, b in zip(diam, diam[1:]))


def test_determinism():
    cfg = rcircle_family(0.3)
    a, b = build_level(cfg, 6), build_level(cfg, 6)
    assert np.array_equal(a.words, b.words)
    assert np.array_equal(a.zeta, b.zeta) and np.array_equal(a.v, b.v)


def test_cap():
    with pytest.raises(ResourceError):
        build_level(symmetric_family(0.5), 5, cap=47)
    assert len(build_level(symmetric_family(0.5), 5, cap=48)) == 48


def test_invalid_config():
    with pytest.raises(ConfigurationError):
        enumerate_words(symmetric_family(1.3, strict=False), 2)
    assert len(enumerate_words(symmetric_family(1.3, strict=False), 2, check_valid=False)) == 6


@pytest.mark.parametrize("depth", [0, -1, 2.0, True])
def test_bad_depth(depth):
    with pytest.raises(DomainError):
        build_level(symmetric_family(0.5), depth)


def test_check_reduced():
    assert check_reduced([0, 1, 0]) == (0, 1, 0)
    for bad in ([], [1, 1], (0, 2, 2)):
        with pytest.raises(DomainError):
            check_reduced(bad)
