"""Undirected simple graphs in CSR form, SNAP edge-list I/O and synthetic generators.

Node ids are contiguous integers ``0..N-1``. The external label of every node
(the token that appeared in the input file) is kept in ``Graph.labels`` and is
only used for reporting.
"""

from __future__ import annotations

import gzip
import io
import os
from dataclasses import dataclass, field
from typing import Iterable, TextIO

import numpy as np


class EdgeListError(ValueError):
    """Raised for malformed edge-list input."""

    def __init__(self, lineno: int, line: str, reason: str = "expected 2 tokens"):
        super().__init__(f"line {lineno}: {reason}: {line!r}")
        self.lineno = lineno


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable undirected simple graph.

    Parameters
    ----------
    indptr : np.ndarray
        CSR row pointer of length ``N + 1``.
    indices : np.ndarray
        Concatenated, per-node sorted neighbor lists.
    labels : tuple of str
        External label of each node, indexed by internal id.
    """

    indptr: np.ndarray
    indices: np.ndarray
    labels: tuple[str, ...]
    _label_index: dict[str, int] = field(init=False, repr=False)

    def __post_init__(self):
        self.indptr.setflags(write=False)
        self.indices.setflags(write=False)
        object.__setattr__(self, "_label_index", {lab: i for i, lab in enumerate(self.labels)})

    @property
    def node_count(self) -> int:
        return len(self.indptr) - 1

    @property
    def edge_count(self) -> int:
        return len(self.indices) // 2

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def neighbors(self, i: int) -> np.ndarray:
        self._check(i)
        return self.indices[self.indptr[i] : self.indptr[i + 1]]

    @property
    def adjacency(self) -> list[list[int]]:
        return [self.indices[a:b].tolist() for a, b in zip(self.indptr[:-1], self.indptr[1:])]

    def edges(self) -> Iterable[tuple[int, int]]:
        """Yield every undirected edge once as ``(i, j)`` with ``i < j``."""
        for i in range(self.node_count):
            for j in self.indices[self.indptr[i] : self.indptr[i + 1]]:
                if i < j:
                    yield i, int(j)

    def node_id(self, label: str) -> int:
        return self._label_index[label]

    def _check(self, i: int) -> None:
        if not 0 <= i < self.node_count:
            raise IndexError(f"node id {i} out of range [0, {self.node_count})")

    def __len__(self) -> int:
        return self.node_count

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.labels == other.labels
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
        )

    def __hash__(self):
        return hash((self.labels, self.indptr.tobytes(), self.indices.tobytes()))

    def __repr__(self):
        return f"Graph(N={self.node_count}, M={self.edge_count})"


def degree(g: Graph, i: int) -> int:
    """Number of neighbors of node ``i``."""
    g._check(i)
    return int(g.indptr[i + 1] - g.indptr[i])


def from_edges(n: int, src, dst, labels: Iterable[str] | None = None) -> Graph:
    """Build a simple undirected graph on ``n`` nodes from arc arrays.

    Arcs are symmetrized; self-loops and parallel edges are dropped.
    """
    src = np.asarray(src, dtype=np.int64).ravel()
    dst = np.asarray(dst, dtype=np.int64).ravel()
    if src.shape != dst.shape:
        raise ValueError("src and dst must have the same length")
    if len(src) and (min(src.min(), dst.min()) < 0 or max(src.max(), dst.max()) >= n):
        raise ValueError("edge endpoint out of range")
    keep = src != dst
    lo = np.minimum(src[keep], dst[keep])
    hi = np.maximum(src[keep], dst[keep])
    pairs = np.unique(lo * max(n, 1) + hi)
    lo, hi = pairs // max(n, 1), pairs % max(n, 1)
    rows = np.concatenate([lo, hi])
    cols = np.concatenate([hi, lo])
    order = np.lexsort((cols, rows))
    rows, cols = rows[order], cols[order]
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(rows, minlength=n), out=indptr[1:])
    labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
    if len(labels) != n:
        raise ValueError("need one label per node")
    return Graph(indptr, cols.astype(np.int64), labels)


def parse_edge_list(text: str | TextIO | Iterable[str]) -> Graph:
    """Parse a SNAP-style edge list.

    Lines starting with ``#`` and blank lines are skipped. Every other line
    must hold exactly two whitespace-separated labels. Labels receive ids in
    order of first appearance, including labels seen only on a self-loop
    line; the loop itself is dropped. Directed arcs are symmetrized.
    """
    if isinstance(text, str):
        text = io.StringIO(text)
    index: dict[str, int] = {}
    src: list[int] = []
    dst: list[int] = []
    for lineno, line in enumerate(text, 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        parts = s.split()
        if len(parts) != 2:
            raise EdgeListError(lineno, line.rstrip("\n"))
        u, v = parts
        iu = index.setdefault(u, len(index))
        iv = index.setdefault(v, len(index))
        src.append(iu)
        dst.append(iv)
    return from_edges(len(index), src, dst, labels=index)


def read_edge_list(path: str | os.PathLike) -> Graph:
    """Read an edge-list file; ``.gz`` files are decompressed transparently."""
    path = os.fspath(path)
    opener = gzip.open if path.endswith(".gz") else open
    with opener(path, "rt", encoding="utf-8") as fh:
        return parse_edge_list(fh)


def write_edge_list(g: Graph, out: TextIO) -> None:
    """Write ``g`` so that :func:`parse_edge_list` reproduces it exactly.

    Node ``k`` is introduced by its first edge to a lower id; a node with no
    lower neighbor is introduced by a ``k k`` line, which the parser registers
    and then drops.
    """
    lab = g.labels
    for k in range(g.node_count):
        nbrs = g.indices[g.indptr[k] : g.indptr[k + 1]]
        lower = nbrs[nbrs < k]
        if len(lower) == 0:
            out.write(f"{lab[k]} {lab[k]}\n")
        for j in lower:
            out.write(f"{lab[j]} {lab[k]}\n")


def to_edge_list(g: Graph) -> str:
    buf = io.StringIO()
    write_edge_list(g, buf)
    return buf.getvalue()


def erdos_renyi(n: int, p: float, seed: int) -> Graph:
    """G(n, p) random graph, deterministic for a fixed ``seed``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must be in [0, 1]")
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, k=1)
    mask = rng.random(len(iu)) < p
    return from_edges(n, iu[mask], ju[mask])


def barabasi_albert(n: int, m: int, seed: int) -> Graph:
    """Preferential attachment starting from a triangle.

    Each new node links to ``m`` distinct existing nodes drawn with probability
    proportional to degree, without replacement. Nodes 0..2 form the initial
    triangle; a new node that finds fewer than ``m`` existing nodes links to
    all of them. For ``n >= 3`` and ``m <= 3`` the result has
    ``3 + m * (n - 3)`` edges.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 1 <= m < n:
        raise ValueError("need 1 <= m < n")
    rng = np.random.default_rng(seed)
    k0 = min(n, 3)
    src = [i for i in range(k0) for j in range(i + 1, k0)]
    dst = [j for i in range(k0) for j in range(i + 1, k0)]
    deg = np.zeros(n, dtype=np.float64)
    for a, b in zip(src, dst):
        deg[a] += 1
        deg[b] += 1
    for v in range(k0, n):
        k = min(m, v)
        w = deg[:v]
        targets = rng.choice(v, size=k, replace=False, p=w / w.sum())
        for t in sorted(int(x) for x in targets):
            src.append(t)
            dst.append(v)
            deg[t] += 1
        deg[v] += k
    return from_edges(n, src, dst)


def generate_synthetic(model: str, seed: int, **params) -> Graph:
    """Dispatch to a named generator: ``erdos_renyi(n, p)`` or ``barabasi_albert(n, m)``."""
    if model == "erdos_renyi":
        return erdos_renyi(params["n"], params["p"], seed)
    if model == "barabasi_albert":
        return barabasi_albert(params["n"], params["m"], seed)
    raise ValueError(f"unknown model {model!r}")


def disjoint_union(*graphs: Graph) -> Graph:
    """Place graphs side by side; labels are re-numbered."""
    offset = 0
    src, dst = [], []
    for h in graphs:
        for i, j in h.edges():
            src.append(i + offset)
            dst.append(j + offset)
        offset += h.node_count
    return from_edges(offset, src, dst)
