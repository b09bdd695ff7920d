"""Reduced words over the generators and their tagpoints.

Words are built level by level: the words of length ``k + 1`` are obtained by
prefixing each word of length ``k`` with every generator index different from
its first letter.  Generators are involutions, so this enumerates exactly the
reduced words.  The tagpoint of ``j0 j1 ... j(k-1)`` is

    iota_j0 o iota_j1 o ... o iota_j(k-2) (seed_j(k-1))

so it lies inside the isometric ball of ``j0``.  Level order is normative:
outer loop over the new first letter ``j`` ascending, inner loop over the
parents in the order they were produced.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import DomainError, ResourceError
from .heisenberg import Point, reflect_arrays, translate
from .schottky import SchottkyConfig

__all__ = [
    "DEFAULT_NODE_CAP",
    "SEED_OFFSET",
    "WordNode",
    "WordLevel",
    "word_count",
    "seed_tagpoints",
    "word_levels",
    "build_level",
    "check_reduced",
    "enumerate_words",
    "limit_set_sample",
]

DEFAULT_NODE_CAP = 10**7
#: Seeds sit at Cygan distance ``SEED_OFFSET * radius`` from their center.
SEED_OFFSET = 0.01


@dataclass(frozen=True)
class WordNode:
    word: tuple[int, ...]
    tagpoint: Point

    @property
    def tag(self) -> int:
        return self.word[0]

    def label(self, sep: str = "-") -> str:
        return sep.join(str(i) for i in self.word)


@dataclass(frozen=True)
class WordLevel:
    """All reduced words of one length, as arrays.

    ``words[n]`` is the n-th word (first column = outermost letter) and
    ``(zeta[n], v[n])`` its tagpoint.
    """

    words: np.ndarray
    zeta: np.ndarray
    v: np.ndarray

    @property
    def depth(self) -> int:
        return self.words.shape[1]

    def __len__(self):
        return self.words.shape[0]

    def nodes(self) -> list[WordNode]:
        return [
            WordNode(tuple(int(i) for i in w), Point(z, v))
            for w, z, v in zip(self.words, self.zeta.tolist(), self.v.tolist())
        ]

    def keys(self) -> list[tuple[int, ...]]:
        return [tuple(w) for w in self.words.tolist()]


def word_count(m: int, depth: int) -> int:
    """Number of reduced words of length ``depth`` on ``m`` involutions."""
    if depth < 1:
        raise DomainError(f"depth must be >= 1, got {depth}")
    return m * (m - 1) ** (depth - 1)


def seed_tagpoints(cfg: SchottkyConfig) -> list[Point]:
    """One seed per generator, offset from its center by ``SEED_OFFSET * lam``."""
    return [translate(g.center, Point(SEED_OFFSET * g.lam, 0.0)) for g in cfg.generators]


def _check(cfg, depth, cap, check_valid):
    if not isinstance(depth, (int, np.integer)) or isinstance(depth, bool) or depth < 1:
        raise DomainError(f"depth must be a positive integer, got {depth!r}")
    if check_valid:
        cfg.require_valid()
    n = word_count(cfg.m, depth)
    if n > cap:
        raise ResourceError(f"{n} words at depth {depth} exceed the node cap {cap}")


def word_levels(
    cfg: SchottkyConfig,
    depth: int,
    *,
    cap: int = DEFAULT_NODE_CAP,
    check_valid: bool = True,
) -> Iterator[WordLevel]:
    """Yield the word levels of length ``1, 2, ..., depth`` in order."""
    _check(cfg, depth, cap, check_valid)
    m = cfg.m
    seeds = seed_tagpoints(cfg)
    level = WordLevel(
        np.arange(m, dtype=np.int64).reshape(m, 1),
        np.array([s.zeta for s in seeds], dtype=complex),
        np.array([s.v for s in seeds], dtype=float),
    )
    yield level
    for _ in range(depth - 1):
        first = level.words[:, 0]
        words, zs, vs = [], [], []
        for j, g in enumerate(cfg.generators):
            keep = first != j
            parents = level.words[keep]
            words.append(np.hstack([np.full((len(parents), 1), j, dtype=np.int64), parents]))
            z, v = reflect_arrays(g.center.zeta, g.center.v, g.radius, level.zeta[keep], level.v[keep])
            zs.append(z)
            vs.append(v)
        level = WordLevel(np.vstack(words), np.concatenate(zs), np.concatenate(vs))
        yield level


def build_level(cfg: SchottkyConfig, depth: int, **kw) -> WordLevel:
    """The word level of length ``depth``."""
    for level in word_levels(cfg, depth, **kw):
        pass
    return level


def enumerate_words(cfg: SchottkyConfig, depth: int, **kw) -> list[WordNode]:
    """All reduced words of length ``depth`` with their tagpoints, in level order."""
    return build_level(cfg, depth, **kw).nodes()


def limit_set_sample(cfg: SchottkyConfig, depth: int, **kw) -> list[Point]:
    """Depth-``depth`` tagpoints, a finite approximation of the limit set."""
    return [n.tagpoint for n in enumerate_words(cfg, depth, **kw)]


def check_reduced(word) -> tuple[int, ...]:
    word = tuple(int(i) for i in word)
    if not word:
        raise DomainError("empty word")
    if any(a == b for a, b in zip(word, word[1:])):
        raise DomainError(f"word {word} is not reduced")
    return word

