"""Seed-set selection: top-n by score, plain k-shell, Ks-P and Ks-Hp.

Every ranking is a total order so selections are deterministic: the primary
key descending, then degree descending, then internal id ascending.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from . import centrality
from .centrality import ScoreVector
from .decomposition import ShellAssignment, k_shell_decompose
from .graph import Graph

TIE_BREAK_POLICY = "primary key desc, degree desc, node id asc"


class Algorithm(str, enum.Enum):
    Dg = "dg"
    Eg = "eg"
    Pr = "pr"
    Kshell = "kshell"
    KsP = "ks-p"
    KsHp = "ks-hp"

    @property
    def display(self) -> str:
        return _DISPLAY[self]


_DISPLAY = {
    Algorithm.Dg: "Dg",
    Algorithm.Eg: "Eg",
    Algorithm.Pr: "Pr",
    Algorithm.Kshell: "k-shell",
    Algorithm.KsP: "Ks-P",
    Algorithm.KsHp: "Ks-Hp",
}


@dataclass(frozen=True)
class SeedSet:
    algorithm: Algorithm
    n_requested: int
    members: tuple[int, ...]
    truncated: bool = False
    # (shell index, quota, selected count) per shell for Ks-P / Ks-Hp
    allocation_trace: tuple[tuple[int, int, int], ...] = field(default=())

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


def _check_n(n: int) -> None:
    if n < 1:
        raise ValueError("n must be >= 1")


def rank_nodes(primary, degrees) -> np.ndarray:
    """Node ids by primary desc, degree desc, id asc."""
    primary = np.asarray(primary)
    ids = np.arange(len(primary))
    return np.lexsort((ids, -np.asarray(degrees), -primary))


def select_top_by_score(scores: ScoreVector, g: Graph, n: int, algorithm: Algorithm | None = None) -> SeedSet:
    _check_n(n)
    if len(scores) != g.node_count:
        raise ValueError("score vector length does not match graph")
    if algorithm is None:
        algorithm = {"degree": Algorithm.Dg, "eigenvector": Algorithm.Eg, "pagerank": Algorithm.Pr}[scores.metric]
    order = rank_nodes(scores.scores, g.degrees)
    members = tuple(int(x) for x in order[:n])
    return SeedSet(algorithm, n, members, truncated=n > g.node_count)


def select_kshell_baseline(sa: ShellAssignment, g: Graph, n: int) -> SeedSet:
    _check_n(n)
    order = rank_nodes(sa.shell_index, g.degrees)
    members = tuple(int(x) for x in order[:n])
    return SeedSet(Algorithm.Kshell, n, members, truncated=n > g.node_count)


def allocate_proportional(populations, n: int) -> list[tuple[int, int]]:
    """Largest-remainder apportionment of ``n`` seeds over shells.

    Parameters
    ----------
    populations : sequence of (shell_index, population)
        Innermost shell first.
    n : int
        Seeds to hand out. At most the total population is allocated.

    Returns
    -------
    list of (shell_index, quota)
        Same order as ``populations``.

    Each shell first gets ``floor(n * pop / total)``; leftover seeds go one at
    a time by descending fractional part, the inner shell winning ties. A
    quota above its shell's population is capped and the surplus is
    apportioned again over the shells that still have room.
    """
    shells = [s for s, _ in populations]
    pops = [int(p) for _, p in populations]
    if n < 0 or any(p < 0 for p in pops):
        raise ValueError("n and populations must be non-negative")
    total = sum(pops)
    if total == 0:
        if n > 0:
            raise ValueError("cannot allocate seeds over empty shells")
        return [(s, 0) for s in shells]

    quotas = [0] * len(pops)
    remaining = min(n, total)
    while remaining > 0:
        room = [p - q for p, q in zip(pops, quotas)]
        open_ = [i for i, r in enumerate(room) if r > 0]
        weight = sum(pops[i] for i in open_)
        share = {i: divmod(remaining * pops[i], weight) for i in open_}
        grant = {i: share[i][0] for i in open_}
        leftover = remaining - sum(grant.values())
        # exact remainders share the denominator, so integer numerators compare exactly
        by_fraction = sorted(open_, key=lambda i: (-share[i][1], i))
        for i in by_fraction[:leftover]:
            grant[i] += 1
        for i in open_:
            take = min(grant[i], room[i])
            quotas[i] += take
            remaining -= take
    return list(zip(shells, quotas))


def _shell_members_by_degree(sa: ShellAssignment, g: Graph, exclude=frozenset()):
    deg = g.degrees
    for s, members in sa.shells:
        ms = [v for v in members if v not in exclude]
        ms.sort(key=lambda v: (-deg[v], v))
        yield s, ms


def _proportional_pick(sa: ShellAssignment, g: Graph, n: int, exclude=frozenset()):
    ranked = list(_shell_members_by_degree(sa, g, exclude))
    quotas = allocate_proportional([(s, len(ms)) for s, ms in ranked], n)
    picked: list[int] = []
    trace = []
    for (s, ms), (_, q) in zip(ranked, quotas):
        picked.extend(ms[:q])
        trace.append((s, q, min(q, len(ms))))
    return picked, trace


def select_ks_p(sa: ShellAssignment, g: Graph, n: int) -> SeedSet:
    """Seeds spread over all shells in proportion to shell population.

    Within a shell the highest-degree nodes are taken.
    """
    _check_n(n)
    picked, trace = _proportional_pick(sa, g, min(n, g.node_count))
    return SeedSet(Algorithm.KsP, n, tuple(picked), n > g.node_count, tuple(trace))


def select_ks_hp(sa: ShellAssignment, g: Graph, n: int) -> SeedSet:
    """Half the seeds (rounded up) from the core by degree, the rest by Ks-P.

    If the core is smaller than the first half it is taken whole and the
    deficit moves to the proportional half. The proportional half ignores the
    nodes already chosen.
    """
    _check_n(n)
    n_eff = min(n, g.node_count)
    if n_eff == 0:
        return SeedSet(Algorithm.KsHp, n, (), n > g.node_count)
    half = -(-n_eff // 2)
    core_idx = sa.core_index
    deg = g.degrees
    core = sorted(sa.core, key=lambda v: (-deg[v], v))
    first = core[:half]
    rest, trace = _proportional_pick(sa, g, n_eff - len(first), exclude=frozenset(first))
    trace = [(core_idx, half, len(first))] + trace
    return SeedSet(Algorithm.KsHp, n, tuple(first + rest), n > g.node_count, tuple(trace))


def select_seeds(
    algorithm: Algorithm | str,
    g: Graph,
    n: int,
    sa: ShellAssignment | None = None,
    scores: ScoreVector | None = None,
) -> SeedSet:
    """Run one of the six selectors; decomposition/scores are computed if not given."""
    algorithm = Algorithm(algorithm)
    if algorithm in (Algorithm.Dg, Algorithm.Eg, Algorithm.Pr):
        if scores is None:
            metric = {Algorithm.Dg: "degree", Algorithm.Eg: "eigenvector", Algorithm.Pr: "pagerank"}[algorithm]
            scores = centrality.compute(g, metric)
        return select_top_by_score(scores, g, n, algorithm)
    if sa is None:
        sa = k_shell_decompose(g)
    if algorithm is Algorithm.Kshell:
        return select_kshell_baseline(sa, g, n)
    if algorithm is Algorithm.KsP:
        return select_ks_p(sa, g, n)
    return select_ks_hp(sa, g, n)


__all__ = [
    "Algorithm",
    "SeedSet",
    "TIE_BREAK_POLICY",
    "allocate_proportional",
    "rank_nodes",
    "select_kshell_baseline",
    "select_ks_hp",
    "select_ks_p",
    "select_seeds",
    "select_top_by_score",
]
