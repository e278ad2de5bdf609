"""Uninformed/Informed spreading with one-round active sharing, plus Monte Carlo averaging.

A node is Uninformed, Informed-active or Informed-inactive. Each synchronous
round every active node tries once, independently with probability ``beta``,
to inform each of its still-uninformed neighbors. Nodes informed during the
round are the active set of the next round; everybody active this round
goes inactive. The run ends when nobody is active.
"""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .graph import Graph

DEFAULT_BETA = 0.09
DEFAULT_REALIZATIONS = 100
SEED_MIXING = (
    "numpy SeedSequence(entropy=[master_seed mod 2**64, *stream, realization]) "
    "-> 64-bit state -> PCG64"
)

_MASK64 = (1 << 64) - 1


def realization_seed(master_seed: int, index: int, stream: Sequence[int] = ()) -> int:
    """Deterministic 64-bit seed for one realization."""
    ss = np.random.SeedSequence([master_seed & _MASK64, *stream, index])
    lo, hi = ss.generate_state(2, dtype=np.uint32)
    return int(hi) << 32 | int(lo)


@dataclass(frozen=True)
class SimConfig:
    beta: float = DEFAULT_BETA
    realizations: int = DEFAULT_REALIZATIONS
    master_seed: int = 0
    max_steps: int | None = None

    def __post_init__(self):
        if not 0.0 <= self.beta <= 1.0:
            raise ValueError("beta must be in [0, 1]")
        if self.realizations < 1:
            raise ValueError("realizations must be >= 1")
        if self.max_steps is not None and self.max_steps < 1:
            raise ValueError("max_steps must be >= 1")


@dataclass(frozen=True)
class SimResult:
    informed_count: int
    node_count: int
    steps_taken: int
    new_per_step: tuple[int, ...]

    @property
    def coverage(self) -> float:
        return self.informed_count / self.node_count

    @property
    def propagation_rounds(self) -> int:
        """Rounds in which at least one node got informed."""
        return sum(1 for k in self.new_per_step if k)


@dataclass(frozen=True)
class MeanResult:
    beta: float
    coverages: tuple[float, ...]
    steps: tuple[int, ...]

    @property
    def runs(self) -> int:
        return len(self.coverages)

    @property
    def mean_coverage(self) -> float:
        return math.fsum(self.coverages) / self.runs

    @property
    def std(self) -> float:
        """Sample standard deviation; 0 for a single run."""
        if self.runs < 2:
            return 0.0
        m = self.mean_coverage
        return math.sqrt(math.fsum((c - m) ** 2 for c in self.coverages) / (self.runs - 1))

    @property
    def steps_histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(self.steps).items()))

    def to_dict(self) -> dict:
        return {
            "mean_coverage": self.mean_coverage,
            "std": self.std,
            "runs": self.runs,
            "beta": self.beta,
            "steps_histogram": {str(k): v for k, v in self.steps_histogram.items()},
        }


def _seed_array(g: Graph, seeds: Iterable[int]) -> np.ndarray:
    arr = np.unique(np.fromiter((int(s) for s in seeds), dtype=np.int64))
    if len(arr) == 0:
        raise ValueError("seed set is empty")
    if arr[0] < 0 or arr[-1] >= g.node_count:
        raise ValueError("seed id out of range")
    return arr


def _out_arcs(indptr: np.ndarray, indices: np.ndarray, nodes: np.ndarray) -> np.ndarray:
    starts = indptr[nodes]
    lengths = indptr[nodes + 1] - starts
    total = int(lengths.sum())
    if total == 0:
        return indices[:0]
    # position k of the concatenation maps to starts[owner] + (k - offset[owner])
    offsets = np.cumsum(lengths) - lengths
    idx = np.arange(total) + np.repeat(starts - offsets, lengths)
    return indices[idx]


def _run(g: Graph, seeds: np.ndarray, beta: float, rng: np.random.Generator, max_steps: int) -> SimResult:
    indptr, indices = g.indptr, g.indices
    informed = np.zeros(g.node_count, dtype=bool)
    informed[seeds] = True
    active = seeds
    count = len(seeds)
    new_per_step = []
    while len(active) and len(new_per_step) < max_steps:
        targets = _out_arcs(indptr, indices, active)
        targets = targets[~informed[targets]]
        hits = rng.random(len(targets)) < beta
        active = np.unique(targets[hits])
        informed[active] = True
        count += len(active)
        new_per_step.append(len(active))
    return SimResult(count, g.node_count, len(new_per_step), tuple(new_per_step))


def simulate_once(g: Graph, seeds: Iterable[int], beta: float, rng_seed: int, max_steps: int | None = None) -> SimResult:
    """One realization of the spreading process from ``seeds``."""
    if not 0.0 <= beta <= 1.0:
        raise ValueError("beta must be in [0, 1]")
    arr = _seed_array(g, seeds)
    rng = np.random.default_rng(rng_seed)
    return _run(g, arr, beta, rng, max_steps or g.node_count)


def _realization(args) -> tuple[float, int]:
    g, seeds, beta, seed, max_steps = args
    r = _run(g, seeds, beta, np.random.default_rng(seed), max_steps)
    return r.coverage, r.steps_taken


def simulate_mean(
    g: Graph,
    seeds: Iterable[int],
    cfg: SimConfig,
    stream: Sequence[int] = (),
    workers: int = 1,
) -> MeanResult:
    """Average ``cfg.realizations`` independent runs.

    Realization ``i`` is seeded with ``realization_seed(cfg.master_seed, i,
    stream)``, so the result does not depend on ``workers``.
    """
    arr = _seed_array(g, seeds)
    max_steps = cfg.max_steps or g.node_count
    jobs = [
        (g, arr, cfg.beta, realization_seed(cfg.master_seed, i, stream), max_steps)
        for i in range(cfg.realizations)
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            out = list(pool.map(_realization, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        out = [_realization(job) for job in jobs]
    return MeanResult(cfg.beta, tuple(c for c, _ in out), tuple(s for _, s in out))

