import math

import numpy as np
import pytest
from scipy import sparse

from cyganhdim import markov
from cyganhdim.errors import DomainError
from cyganhdim.heisenberg import Point, ReflectionGenerator, distortion_factor
from cyganhdim.markov import TransitionMatrix, admissible_successors, is_irreducible, transition_matrix
from cyganhdim.schottky import SchottkyConfig, rcircle_family, symmetric_family
from cyganhdim.wordtree import build_level

from test_wordtree import spread_config


def test_successor_examples():
    assert admissible_successors((0,), 3) == [(1,), (2,)]
    assert admissible_successors((0, 1), 3) == [(1, 0), (1, 2)]
    assert admissible_successors((0, 1), 2) == [(1, 0)]


def test_successor_errors():
    with pytest.raises(DomainError):
        admissible_successors((0, 0), 3)
    with pytest.raises(DomainError):
        admissible_successors((0, 3), 3)


@pytest.mark.parametrize("theta", [math.pi / 12, math.pi / 8, math.pi / 6, math.pi / 5, math.pi / 4])
def test_symmetric_depth_one(theta):
    T = transition_matrix(symmetric_family(theta), 1).toarray()
    assert T.shape == (3, 3)
    assert np.all(np.diag(T) == 0)
    off = T[~np.eye(3, dtype=bool)]
    assert off == pytest.approx(np.full(6, math.sin(theta) ** 4 / 12), abs=1e-3)


def test_symmetric_pi_6_entries():
    T = transition_matrix(symmetric_family(math.pi / 6), 1).toarray()
    off = T[~np.eye(3, dtype=bool)]
    assert off == pytest.approx(np.full(6, 1 / 192), rel=0.05)


def test_depth_two_shape():
    T = transition_matrix(rcircle_family(0.3), 2)
    assert T.dim == 6
    assert np.all((T.toarray() > 0).sum(axis=1) == 2)


@pytest.mark.parametrize("cfg", [symmetric_family(0.6), rcircle_family(0.5), spread_config(4)], ids=["sym", "rcircle", "m4"])
@pytest.mark.parametrize("depth", [1, 2, 4])
def test_support_is_successor_relation(cfg, depth):
    T = transition_matrix(cfg, depth)
    index = T.index
    expected = np.zeros((T.dim, T.dim))
    for w in T.words:
        for s in admissible_successors(w, cfg.m):
            expected[index[w], index[s]] = 1
    assert np.array_equal(T.support(), expected)


@pytest.mark.parametrize("depth", [1, 3])
def test_entries_are_distortions_at_successor_tagpoints(depth):
    cfg = rcircle_family(0.4)
    level = build_level(cfg, depth)
    pts = [n.tagpoint for n in level.nodes()]
    T = transition_matrix(cfg, depth, "cygan")
    A = T.toarray()
    for a, w in enumerate(T.words):
        g = cfg.generators[w[0]]
        for b in np.nonzero(A[a])[0]:
            assert A[a, b] == pytest.approx(distortion_factor(g, pts[b]), rel=1e-12)


def test_cygan_squared_is_det():
    cfg = rcircle_family(0.55)
    D = transition_matrix(cfg, 4, "det").toarray()
    C = transition_matrix(cfg, 4, "cygan").toarray()
    assert np.array_equal(D > 0, C > 0)
    mask = D > 0
    assert np.allclose(C[mask] ** 2, D[mask], rtol=1e-12, atol=0)


@pytest.mark.parametrize("cfg", [symmetric_family(0.9), rcircle_family(0.6, strict=True), spread_config(4)], ids=["sym", "rcircle", "m4"])
def test_irreducible_and_expanding(cfg):
    for depth in range(1, 6):
        T = transition_matrix(cfg, depth, check_valid=False)
        assert T.irreducible()
        vals = T.positive_values()
        assert np.all((vals > 0) & (vals < 1))


def test_two_generators_irreducible():
    assert transition_matrix(spread_config(2), 3).irreducible()


def test_refinement_consistency():
    # an admissible fine transition projects, via the length-n prefix, onto an admissible coarse one
    cfg = symmetric_family(0.7)
    for n in range(1, 5):
        coarse = transition_matrix(cfg, n)
        fine = transition_matrix(cfg, n + 1)
        ci, C = coarse.index, coarse.support()
        projected = np.zeros_like(C)
        for a, b in zip(*np.nonzero(fine.support())):
            projected[ci[fine.words[a][:n]], ci[fine.words[b][:n]]] = 1
        assert np.array_equal(projected, C)


def test_sparse_path(monkeypatch):
    cfg = rcircle_family(0.4)
    dense = transition_matrix(cfg, 4)
    monkeypatch.setattr(markov, "DENSE_MAX_DIM", 10)
    sp = transition_matrix(cfg, 4)
    assert sp.is_sparse and not dense.is_sparse
    assert np.array_equal(sp.toarray(), dense.toarray())
    assert sp.irreducible()
    assert np.array_equal(np.sort(sp.positive_values()), np.sort(dense.positive_values()))


def test_bad_convention():
    with pytest.raises(DomainError):
        transition_matrix(symmetric_family(0.5), 1, "sqrt")


def test_transition_matrix_validation():
    with pytest.raises(DomainError):
        TransitionMatrix(np.ones((2, 3)))
    with pytest.raises(DomainError):
        TransitionMatrix(np.array([[0, -1.0], [1, 0]]))
    with pytest.raises(DomainError):
        TransitionMatrix(np.array([[0, np.inf], [1, 0]]))
    with pytest.raises(DomainError):
        TransitionMatrix(np.zeros((2, 2)), words=((0,),))


def test_is_irreducible():
    assert is_irreducible(np.array([[0, 1], [1, 0]]))
    assert not is_irreducible(np.array([[1, 1], [0, 1]]))
    assert is_irreducible(sparse.csr_matrix(np.array([[0, 0, 1], [1, 0, 0], [0, 1, 0]])))
    assert not is_irreducible(np.zeros((1, 1)))
