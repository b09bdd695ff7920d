"""Markov partition by isometric balls and its transition matrices.

At refinement depth ``n`` the blocks are the reduced words of length ``n``.
Block ``a = (j0, ..., j(n-1))`` maps onto every block
``b = (j1, ..., j(n-1), j)`` with ``j != j(n-1)``, and the entry ``T[a, b]``
is the contraction of the inverse branch ``iota_j0`` evaluated at the
tagpoint of ``b``:

* ``cygan`` -- the Cygan scaling factor ``r^2 / d^2`` of ``iota_j0`` at that point;
* ``det``   -- its square ``r^4 / d^4`` (default), the value used for the
  symmetric family's closed-form dimension ``log 2 / (log 12 - 4 log sin theta)``.

``r`` is the radius of ``j0`` and ``d`` the Cygan distance from the tagpoint of
``b`` to the center of ``j0``.  The ``det`` solution is exactly half the
``cygan`` one for every matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np
from scipy import sparse
from scipy.sparse.csgraph import connected_components

from .errors import DomainError, SingularityError
from .heisenberg import SINGULAR_RTOL, cygan_distance_arrays
from .schottky import SchottkyConfig
from .wordtree import DEFAULT_NODE_CAP, WordLevel, build_level, check_reduced

__all__ = [
    "CONVENTIONS",
    "DENSE_MAX_DIM",
    "TransitionMatrix",
    "admissible_successors",
    "transition_matrix",
    "is_irreducible",
]

Convention = Literal["det", "cygan"]
CONVENTIONS = ("det", "cygan")
DENSE_MAX_DIM = 4096


def admissible_successors(w: Sequence[int], m: int) -> list[tuple[int, ...]]:
    """Blocks that the block ``w`` maps over, in ascending order of the new letter."""
    w = check_reduced(w)
    if m < 2:
        raise DomainError("need at least 2 generators")
    if max(w) >= m or min(w) < 0:
        raise DomainError(f"word {w} uses letters outside range({m})")
    head = w[1:]
    return [head + (j,) for j in range(m) if j != w[-1]]


def is_irreducible(entries) -> bool:
    """True iff the support digraph of a square matrix is strongly connected."""
    n = entries.shape[0]
    if n == 1:
        return bool(entries[0, 0] > 0) if not sparse.issparse(entries) else entries.nnz > 0
    ncomp, _ = connected_components(sparse.csr_matrix(entries), directed=True, connection="strong")
    return ncomp == 1


@dataclass(frozen=True)
class TransitionMatrix:
    """Nonnegative square matrix indexed by partition blocks.

    ``entries`` is a dense ``ndarray`` up to :data:`DENSE_MAX_DIM` rows and a
    CSR matrix above that.
    """

    entries: np.ndarray | sparse.csr_matrix
    words: tuple[tuple[int, ...], ...] = ()
    convention: str = "det"

    def __post_init__(self):
        e = self.entries
        if not sparse.issparse(e):
            e = np.asarray(e, dtype=float)
            if e.ndim != 2 or e.shape[0] != e.shape[1]:
                raise DomainError(f"transition matrix must be square, got shape {e.shape}")
            data = e
        else:
            e = sparse.csr_matrix(e, dtype=float)
            if e.shape[0] != e.shape[1]:
                raise DomainError(f"transition matrix must be square, got shape {e.shape}")
            data = e.data
        if not np.all(np.isfinite(data)) or np.any(data < 0):
            raise DomainError("transition matrix entries must be finite and nonnegative")
        object.__setattr__(self, "entries", e)
        if self.words and len(self.words) != e.shape[0]:
            raise DomainError("word index does not match matrix size")

    @classmethod
    def from_array(cls, a, **kw) -> "TransitionMatrix":
        return cls(a, **kw)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def is_sparse(self) -> bool:
        return sparse.issparse(self.entries)

    @property
    def index(self) -> dict[tuple[int, ...], int]:
        return {w: i for i, w in enumerate(self.words)}

    def positive_values(self) -> np.ndarray:
        e = self.entries
        return e.data[e.data > 0] if self.is_sparse else e[e > 0]

    def support(self) -> np.ndarray | sparse.csr_matrix:
        """0/1 indicator of the positive entries."""
        if self.is_sparse:
            s = self.entries.copy()
            s.eliminate_zeros()
            s.data[:] = 1.0
            return s
        return (self.entries > 0).astype(float)

    def toarray(self) -> np.ndarray:
        return self.entries.toarray() if self.is_sparse else np.array(self.entries)

    def matvec(self, x: np.ndarray) -> np.ndarray:
        return self.entries @ x

    def power(self, alpha: float) -> "TransitionMatrix":
        from .spectral import entrywise_power

        return entrywise_power(self, alpha)

    def irreducible(self) -> bool:
        return is_irreducible(self.entries)


def _successor_columns(level: WordLevel, m: int) -> tuple[np.ndarray, np.ndarray]:
    """Row and column indices of all admissible transitions of one level."""
    words = level.words
    n, depth = words.shape
    # index of a word: mixed-radix key over letters
    radix = np.int64(m)
    keys = np.zeros(n, dtype=np.int64)
    for c in range(depth):
        keys = keys * radix + words[:, c]
    order = np.argsort(keys)
    sorted_keys = keys[order]

    rows, cols = [], []
    shifted = np.zeros(n, dtype=np.int64)
    for c in range(1, depth):
        shifted = shifted * radix + words[:, c]
    last = words[:, -1]
    for j in range(m):
        ok = last != j
        cand = shifted[ok] * radix + j
        pos = np.searchsorted(sorted_keys, cand)
        rows.append(np.nonzero(ok)[0])
        cols.append(order[pos])
    rows = np.concatenate(rows)
    cols = np.concatenate(cols)
    perm = np.lexsort((cols, rows))
    return rows[perm], cols[perm]


def transition_matrix(
    cfg: SchottkyConfig,
    depth: int,
    convention: Convention = "det",
    *,
    cap: int = DEFAULT_NODE_CAP,
    check_valid: bool = True,
) -> TransitionMatrix:
    """Transition matrix of the depth-``depth`` refinement of the partition."""
    if convention not in CONVENTIONS:
        raise DomainError(f"convention must be one of {CONVENTIONS}, got {convention!r}")
    level = build_level(cfg, depth, cap=cap, check_valid=check_valid)
    m = cfg.m
    rows, cols = _successor_columns(level, m)

    gen = level.words[rows, 0]
    cz = np.array([g.center.zeta for g in cfg.generators], dtype=complex)[gen]
    cv = np.array([g.center.v for g in cfg.generators], dtype=float)[gen]
    r = np.array([g.radius for g in cfg.generators], dtype=float)[gen]
    d = cygan_distance_arrays(level.zeta[cols], level.v[cols], cz, cv)
    if np.any(d < SINGULAR_RTOL * r):
        raise SingularityError("a tagpoint coincides with the pole of a reflection")
    vals = (r / d) ** 2
    if convention == "det":
        vals = vals * vals

    n = len(level)
    if n <= DENSE_MAX_DIM:
        entries = np.zeros((n, n))
        entries[rows, cols] = vals
    else:
        entries = sparse.csr_matrix((vals, (rows, cols)), shape=(n, n))
    return TransitionMatrix(entries, tuple(level.keys()), convention)
