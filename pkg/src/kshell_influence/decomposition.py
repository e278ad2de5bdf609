"""k-shell decomposition by bucket peeling."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph


@dataclass(frozen=True, eq=False)
class ShellAssignment:
    """Shell index of every node plus the shells themselves.

    ``shells`` lists ``(shell_index, members)`` pairs innermost first; members
    are in ascending id order.
    """

    shell_index: np.ndarray
    shells: tuple[tuple[int, tuple[int, ...]], ...]

    @property
    def core_index(self) -> int:
        return self.shells[0][0] if self.shells else 0

    @property
    def core(self) -> tuple[int, ...]:
        return self.shells[0][1] if self.shells else ()

    @property
    def core_size(self) -> int:
        return len(self.core)

    @property
    def n_shells(self) -> int:
        """Count of distinct non-empty shell index values."""
        return len(self.shells)

    def __eq__(self, other):
        if not isinstance(other, ShellAssignment):
            return NotImplemented
        return np.array_equal(self.shell_index, other.shell_index)


def core_numbers(g: Graph) -> np.ndarray:
    """Core number of every node, O(N + M).

    Nodes sit in an array sorted by current degree with ``bin_start`` giving
    the first slot of each degree bucket. Removing the node with the lowest
    degree moves each higher-degree neighbor one bucket down by swapping it
    with the first node of its bucket.
    """
    n = g.node_count
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    indptr = g.indptr.tolist()
    indices = g.indices.tolist()
    deg = np.diff(g.indptr).tolist()
    max_deg = max(deg)

    counts = [0] * (max_deg + 1)
    for d in deg:
        counts[d] += 1
    bin_start = [0] * (max_deg + 1)
    start = 0
    for d in range(max_deg + 1):
        bin_start[d] = start
        start += counts[d]

    pos = [0] * n
    order = [0] * n
    fill = bin_start[:]
    for v in range(n):
        pos[v] = fill[deg[v]]
        order[pos[v]] = v
        fill[deg[v]] += 1

    for i in range(n):
        v = order[i]
        dv = deg[v]
        for k in range(indptr[v], indptr[v + 1]):
            u = indices[k]
            du = deg[u]
            if du > dv:
                pu = pos[u]
                pw = bin_start[du]
                w = order[pw]
                if u != w:
                    order[pu], order[pw] = w, u
                    pos[u], pos[w] = pw, pu
                bin_start[du] += 1
                deg[u] = du - 1
    return np.asarray(deg, dtype=np.int64)


def k_shell_decompose(g: Graph) -> ShellAssignment:
    """Assign every node its shell index; isolated nodes land in shell 0."""
    s = core_numbers(g)
    s.setflags(write=False)
    shells = []
    for value in np.unique(s)[::-1]:
        members = np.flatnonzero(s == value)
        shells.append((int(value), tuple(int(x) for x in members)))
    return ShellAssignment(s, tuple(shells))


def shell_populations(sa: ShellAssignment, innermost_first: bool = False) -> list[tuple[int, int]]:
    """``(shell_index, population)`` pairs, ascending by index unless ``innermost_first``."""
    pops = [(idx, len(members)) for idx, members in sa.shells]
    return pops if innermost_first else pops[::-1]
