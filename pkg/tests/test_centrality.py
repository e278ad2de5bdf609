import numpy as np
import pytest

from conftest import cycle, path, star, triangle
from kshell_influence.centrality import (
    compute,
    degree_centrality,
    eigenvector_centrality,
    pagerank,
)
from kshell_influence.graph import disjoint_union, erdos_renyi, from_edges, parse_edge_list
from kshell_influence.seeding import rank_nodes
from oracles import dense_eigenvector, dense_pagerank


def test_degree_centrality():
    assert degree_centrality(triangle()).scores.tolist() == [2, 2, 2]
    assert degree_centrality(star(4)).scores.tolist() == [4, 1, 1, 1, 1]
    assert degree_centrality(path(3)).scores.tolist() == [1, 2, 1]


def test_eigenvector_cycle_uniform():
    sv = eigenvector_centrality(cycle(5))
    assert sv.converged
    np.testing.assert_allclose(sv.scores, 1.0)


def test_eigenvector_star_leaf_ratio():
    # principal eigenpair of K1,n: leaf/center = 1/sqrt(n)
    sv = eigenvector_centrality(star(4), tol=1e-10)
    assert sv.converged
    assert sv.scores[0] == 1.0
    np.testing.assert_allclose(sv.scores[1:], 0.5, atol=1e-8)
    np.testing.assert_allclose(sv.scores, dense_eigenvector(star(4)), atol=1e-8)


def test_eigenvector_matches_dense_oracle():
    g = erdos_renyi(50, 0.2, seed=7)
    sv = eigenvector_centrality(g)
    assert sv.converged and sv.residual < 1e-8
    np.testing.assert_allclose(sv.scores, dense_eigenvector(g), atol=1e-6)
    assert sv.scores.max() == 1.0


def test_eigenvector_empty_and_edgeless():
    assert eigenvector_centrality(parse_edge_list("")).scores.tolist() == []
    assert eigenvector_centrality(from_edges(3, [], [])).scores.tolist() == [0, 0, 0]


def test_eigenvector_nonconvergence_flag():
    sv = eigenvector_centrality(erdos_renyi(50, 0.2, seed=7), tol=1e-15, max_iter=3)
    assert not sv.converged
    assert sv.iterations == 3
    assert sv.residual > 0


def test_pagerank_two_nodes():
    sv = pagerank(path(2))
    np.testing.assert_allclose(sv.scores, [0.5, 0.5], atol=1e-12)


def test_pagerank_c4():
    np.testing.assert_allclose(pagerank(cycle(4), damping=0.85).scores, 0.25, atol=1e-12)


def test_pagerank_star_plus_isolated_matches_linear_solve():
    g = disjoint_union(star(4), from_edges(1, [], []))
    sv = pagerank(g, damping=0.85)
    assert sv.converged
    np.testing.assert_allclose(sv.scores, dense_pagerank(g, 0.85), atol=1e-8)
    assert abs(sv.scores.sum() - 1) < 1e-9


def test_pagerank_random_graph_matches_linear_solve():
    g = erdos_renyi(80, 0.03, seed=4)
    np.testing.assert_allclose(pagerank(g).scores, dense_pagerank(g, 0.85), atol=1e-8)


@pytest.mark.parametrize("iters", [1, 2, 5, 17, 40])
def test_pagerank_mass_conserved_every_iteration(iters):
    g = disjoint_union(erdos_renyi(60, 0.05, seed=2), from_edges(3, [], []))
    sv = pagerank(g, tol=1e-300, max_iter=iters)
    assert sv.iterations == iters
    assert abs(sv.scores.sum() - 1) < 1e-9


@pytest.mark.parametrize("bad", [{"damping": 0.0}, {"damping": 1.0}, {"tol": 0.0}, {"max_iter": 0}])
def test_pagerank_bad_arguments(bad):
    with pytest.raises(ValueError):
        pagerank(triangle(), **bad)


def test_regular_graph_constant_scores():
    g = cycle(7)
    for metric in ("degree", "eigenvector", "pagerank"):
        s = compute(g, metric).scores
        np.testing.assert_allclose(s, s[0], rtol=1e-12)


def test_star_rankings_agree():
    g = star(6)
    d = rank_nodes(degree_centrality(g).scores, g.degrees)
    e = rank_nodes(eigenvector_centrality(g).scores, g.degrees)
    assert d[0] == e[0] == 0


def test_deterministic():
    g = erdos_renyi(100, 0.05, seed=9)
    for metric in ("degree", "eigenvector", "pagerank"):
        a, b = compute(g, metric), compute(g, metric)
        assert a == b
        assert a.scores.tobytes() == b.scores.tobytes()
        assert np.all(np.isfinite(a.scores)) and np.all(a.scores >= 0)


def test_unknown_metric():
    with pytest.raises(ValueError):
        compute(triangle(), "betweenness")
