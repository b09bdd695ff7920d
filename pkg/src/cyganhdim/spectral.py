"""Solving ``rho(T^alpha) = 1`` for a nonnegative transition matrix.

``T^alpha`` is the entrywise power (zero entries stay zero).  The Perron root
is computed by power iteration; the root in ``alpha`` by Newton's method with
a symmetric difference quotient, falling back to bisection on ``[0, 4]``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Literal

import numpy as np
from scipy import sparse

from .errors import ConvergenceError, DomainError, StructuralError
from .markov import Convention, TransitionMatrix, is_irreducible, transition_matrix
from .schottky import SchottkyConfig
from .wordtree import DEFAULT_NODE_CAP

__all__ = [
    "AlphaSolve",
    "ALPHA_BRACKET",
    "entrywise_power",
    "spectral_radius",
    "solve_alpha",
    "dimension",
]

log = logging.getLogger(__name__)

#: Homogeneous dimension of the Heisenberg group bounds every Cygan dimension.
ALPHA_BRACKET = (0.0, 4.0)
NEWTON_MAX_ITER = 350
POWER_MAX_ITER = 100_000
POWER_RTOL = 1e-12
FD_STEP = 1e-4


@dataclass(frozen=True)
class AlphaSolve:
    alpha: float
    rho_at_alpha: float
    iterations: int
    method: Literal["newton", "bisection"]
    converged: bool
    matrix_dim: int | None = None

    @property
    def residual(self) -> float:
        return abs(self.rho_at_alpha - 1.0)


def _as_entries(T):
    if isinstance(T, TransitionMatrix):
        return T.entries
    if sparse.issparse(T):
        return sparse.csr_matrix(T, dtype=float)
    return np.asarray(T, dtype=float)


class _Powers:
    """Entrywise powers of a fixed matrix, reusing the logarithms of its support."""

    def __init__(self, entries):
        self.sparse = sparse.issparse(entries)
        if self.sparse:
            e = entries.copy()
            e.eliminate_zeros()
            self.template = e
            self.logs = np.log(e.data)
        else:
            self.template = entries
            self.mask = entries > 0
            self.logs = np.log(entries[self.mask])

    def __call__(self, alpha):
        if self.sparse:
            out = self.template.copy()
            out.data = np.exp(alpha * self.logs)
            return out
        out = np.zeros_like(self.template)
        out[self.mask] = np.exp(alpha * self.logs)
        return out


def entrywise_power(T, alpha: float):
    """``T`` with every positive entry raised to ``alpha``; zeros stay zero.

    Returns a :class:`TransitionMatrix` when given one, otherwise an array of
    the same kind as the input.
    """
    alpha = float(alpha)
    if not alpha >= 0.0:
        raise DomainError(f"exponent must be nonnegative, got {alpha!r}")
    e = _as_entries(T)
    if sparse.issparse(e):
        out = e.copy()
        out.eliminate_zeros()
        out.data = out.data**alpha
    else:
        out = np.zeros_like(e)
        mask = e > 0
        out[mask] = e[mask] ** alpha
    if isinstance(T, TransitionMatrix):
        return TransitionMatrix(out, T.words, T.convention)
    return out


def spectral_radius(
    T,
    start: np.ndarray | None = None,
    *,
    rtol: float = POWER_RTOL,
    max_iter: int = POWER_MAX_ITER,
    check: bool = True,
) -> tuple[float, np.ndarray]:
    """Perron root and positive eigenvector (summing to 1) of an irreducible matrix.

    Power iteration is run on ``T + s I`` with ``s`` the mean of the extreme
    row sums, which makes the iteration converge for periodic matrices too.
    Iteration stops once the Collatz-Wielandt bounds
    ``min (Tx)_i / x_i <= rho <= max (Tx)_i / x_i`` are within
    ``rtol * max(1, rho)``.
    """
    e = _as_entries(T)
    n = e.shape[0]
    if check:
        if (e.data < 0).any() if sparse.issparse(e) else (e < 0).any():
            raise StructuralError("matrix has negative entries")
        if not is_irreducible(e):
            raise StructuralError("support of the matrix is not strongly connected")
    if start is None:
        x = np.full(n, 1.0 / n)
    else:
        x = np.array(start, dtype=float).ravel()
        if x.shape != (n,) or not np.all(x > 0) or not np.all(np.isfinite(x)):
            raise DomainError("start vector must be strictly positive with one entry per row")
        x /= x.sum()

    rows = np.asarray(e.sum(axis=1)).ravel()
    shift = 0.5 * (rows.min() + rows.max())
    rho = float(rows @ x)
    for _ in range(max_iter):
        y = e @ x
        with np.errstate(divide="ignore", invalid="ignore"):
            ratios = y / x
        lo, hi = ratios.min(), ratios.max()
        rho = 0.5 * (lo + hi)
        if hi - lo <= rtol * max(1.0, rho):
            return float(rho), x
        y += shift * x
        x = y / y.sum()
    raise ConvergenceError(f"power iteration did not converge in {max_iter} steps (rho ~ {rho:.6g})")


def solve_alpha(
    T,
    alpha0: float = 1.0,
    tol: float = 1e-8,
    *,
    method: Literal["newton", "bisection"] = "newton",
    h: float = FD_STEP,
) -> AlphaSolve:
    """Find ``alpha`` in ``[0, 4]`` with ``|rho(T^alpha) - 1| <= tol``.

    The positive entries of ``T`` must lie in ``(0, 1)`` so that
    ``rho(T^alpha)`` is strictly decreasing.  Each power iteration is
    warm-started from the previous eigenvector.
    """
    if method not in ("newton", "bisection"):
        raise DomainError(f"unknown method {method!r}")
    if not tol > 0:
        raise DomainError("tolerance must be positive")
    e = _as_entries(T)
    dim = e.shape[0]
    if not is_irreducible(e):
        raise StructuralError("support of the matrix is not strongly connected")
    vals = e.data if sparse.issparse(e) else e[e != 0]
    if np.any(vals < 0) or np.any(vals >= 1):
        raise StructuralError("positive entries must lie in (0, 1)")

    powers = _Powers(e)
    state = {"x": None, "evals": 0}

    def rho(alpha):
        r, x = spectral_radius(powers(alpha), state["x"], check=False)
        state["x"] = x
        state["evals"] += 1
        return r

    lo, hi = ALPHA_BRACKET
    r_lo = rho(lo)
    if r_lo - 1.0 < -tol:
        raise StructuralError(f"rho(T^0) = {r_lo:.6g} < 1; bracket not certified")
    if abs(r_lo - 1.0) <= tol:
        return AlphaSolve(lo, r_lo, 0, method, True, dim)
    r_hi = rho(hi)
    if r_hi - 1.0 > tol:
        raise StructuralError(f"rho(T^4) = {r_hi:.6g} > 1; bracket not certified")
    if abs(r_hi - 1.0) <= tol:
        return AlphaSolve(hi, r_hi, 0, method, True, dim)

    iterations = 0
    if method == "newton":
        # Safeguarded Newton: a step that would leave the current bracket is
        # replaced by a bisection step.
        a = float(alpha0) if lo < alpha0 < hi else 0.5 * (lo + hi)
        while iterations < NEWTON_MAX_ITER:
            iterations += 1
            r = rho(a)
            if abs(r - 1.0) <= tol:
                return AlphaSolve(a, r, iterations, "newton", True, dim)
            if r > 1.0:
                lo = a
            else:
                hi = a
            x_keep = state["x"]
            slope = (rho(a + h) - rho(a - h)) / (2.0 * h)
            state["x"] = x_keep
            step = a - (r - 1.0) / slope if slope < 0 and math.isfinite(slope) else math.nan
            if lo < step < hi:
                a = step
            else:
                log.debug("newton step %r left [%g, %g]; bisecting", step, lo, hi)
                a = 0.5 * (lo + hi)
            if hi - lo <= 4 * np.finfo(float).eps * max(1.0, hi):
                break

    while iterations < NEWTON_MAX_ITER + 200:
        iterations += 1
        a = 0.5 * (lo + hi)
        r = rho(a)
        if abs(r - 1.0) <= tol:
            return AlphaSolve(a, r, iterations, "bisection", True, dim)
        if r > 1.0:
            lo = a
        else:
            hi = a
        if hi - lo <= 4 * np.finfo(float).eps * max(1.0, hi):
            break
    return AlphaSolve(a, r, iterations, "bisection", abs(r - 1.0) <= tol, dim)


def dimension(
    cfg: SchottkyConfig,
    depth: int = 4,
    tol: float = 1e-8,
    convention: Convention = "det",
    *,
    alpha0: float = 1.0,
    method: Literal["newton", "bisection"] = "newton",
    cap: int = DEFAULT_NODE_CAP,
    check_valid: bool = True,
) -> AlphaSolve:
    """Depth-``depth`` approximation of the dimension of the limit set."""
    T = transition_matrix(cfg, depth, convention, cap=cap, check_valid=check_valid)
    return solve_alpha(T, alpha0, tol, method=method)
