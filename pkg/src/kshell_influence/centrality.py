"""Degree, eigenvector and PageRank scores on the undirected graph."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .graph import Graph

DEFAULT_TOL = 1e-8
DEFAULT_MAX_ITER = 1000
DEFAULT_DAMPING = 0.85


@dataclass(frozen=True, eq=False)
class ScoreVector:
    metric: str
    scores: np.ndarray
    iterations: int = 0
    residual: float = 0.0
    converged: bool = True

    def __len__(self):
        return len(self.scores)

    def __eq__(self, other):
        if not isinstance(other, ScoreVector):
            return NotImplemented
        return (
            self.metric == other.metric
            and self.iterations == other.iterations
            and self.residual == other.residual
            and self.converged == other.converged
            and np.array_equal(self.scores, other.scores)
        )


def adjacency_matrix(g: Graph) -> sp.csr_matrix:
    n = g.node_count
    data = np.ones(len(g.indices), dtype=np.float64)
    return sp.csr_matrix((data, g.indices, g.indptr), shape=(n, n))


def degree_centrality(g: Graph) -> ScoreVector:
    return ScoreVector("degree", g.degrees.astype(np.float64))


def eigenvector_centrality(g: Graph, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER) -> ScoreVector:
    """Principal eigenvector of the adjacency matrix by power iteration.

    Iterates ``x <- (A + I) x`` from the all-ones vector and rescales to unit
    maximum each step. The identity shift keeps the eigenvectors of ``A`` but
    stops the oscillation power iteration shows on bipartite graphs.
    Converged once the max-norm change between steps falls below ``tol``.
    """
    if tol <= 0 or max_iter < 1:
        raise ValueError("need tol > 0 and max_iter >= 1")
    n = g.node_count
    if n == 0 or g.edge_count == 0:
        return ScoreVector("eigenvector", np.zeros(n))
    a = adjacency_matrix(g)
    x = np.ones(n)
    residual = np.inf
    for it in range(1, max_iter + 1):
        y = a @ x + x
        y /= y.max()
        residual = float(np.abs(y - x).max())
        x = y
        if residual < tol:
            return ScoreVector("eigenvector", x, it, residual, True)
    return ScoreVector("eigenvector", x, max_iter, residual, False)


def pagerank(
    g: Graph,
    damping: float = DEFAULT_DAMPING,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> ScoreVector:
    """PageRank with uniform teleport; isolated nodes spread their mass uniformly.

    Converged once the L1 change between steps falls below ``tol``.
    """
    if not 0 < damping < 1:
        raise ValueError("damping must be in (0, 1)")
    if tol <= 0 or max_iter < 1:
        raise ValueError("need tol > 0 and max_iter >= 1")
    n = g.node_count
    if n == 0:
        return ScoreVector("pagerank", np.zeros(0))
    deg = g.degrees.astype(np.float64)
    dangling = deg == 0
    inv_deg = np.divide(1.0, deg, out=np.zeros(n), where=~dangling)
    a = adjacency_matrix(g)
    x = np.full(n, 1.0 / n)
    residual = np.inf
    for it in range(1, max_iter + 1):
        leaked = x[dangling].sum()
        y = damping * (a @ (x * inv_deg)) + (damping * leaked + 1.0 - damping) / n
        residual = float(np.abs(y - x).sum())
        x = y
        if residual < tol:
            return ScoreVector("pagerank", x, it, residual, True)
    return ScoreVector("pagerank", x, max_iter, residual, False)


METRICS = {
    "degree": lambda g, **kw: degree_centrality(g),
    "eigenvector": eigenvector_centrality,
    "pagerank": pagerank,
}


def compute(g: Graph, metric: str, **kwargs) -> ScoreVector:
    try:
        fn = METRICS[metric]
    except KeyError:
        raise ValueError(f"unknown metric {metric!r}") from None
    return fn(g, **kwargs)
