"""Hausdorff dimension of limit sets of complex Schottky groups.

Boundary arithmetic lives in :mod:`.heisenberg`, configurations in
:mod:`.schottky`, the word tree in :mod:`.wordtree`, transition matrices in
:mod:`.markov` and the eigenvalue solve in :mod:`.spectral`.
"""

from .errors import (
    ConfigurationError,
    ConvergenceError,
    CyganError,
    DomainError,
    ResourceError,
    SingularityError,
    StructuralError,
)
from .heisenberg import (
    INFINITY,
    ORIGIN,
    Point,
    ReflectionGenerator,
    apply_reflection,
    cygan_distance,
    dilate,
    distortion_factor,
    group_mul,
    jacobian_det,
    koranyi_inversion,
    translate,
)
from .markov import TransitionMatrix, admissible_successors, transition_matrix
from .schottky import SchottkyConfig, conjugate, isometric_sphere, rcircle_family, symmetric_family, validate
from .spectral import AlphaSolve, dimension, entrywise_power, solve_alpha, spectral_radius
from .wordtree import WordNode, enumerate_words, limit_set_sample, seed_tagpoints

__version__ = "0.1.0"
