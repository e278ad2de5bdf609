"""Influencer detection with k-shell based seed selection and Uninformed/Informed spreading."""

__version__ = "0.1.0"

from .centrality import ScoreVector, degree_centrality, eigenvector_centrality, pagerank
from .decomposition import ShellAssignment, k_shell_decompose, shell_populations
from .diffusion import SimConfig, SimResult, MeanResult, simulate_mean, simulate_once
from .graph import Graph, degree, generate_synthetic, parse_edge_list, read_edge_list, to_edge_list
from .seeding import (
    Algorithm,
    SeedSet,
    allocate_proportional,
    select_kshell_baseline,
    select_ks_hp,
    select_ks_p,
    select_seeds,
    select_top_by_score,
)

__all__ = [
    "Algorithm",
    "Graph",
    "MeanResult",
    "ScoreVector",
    "SeedSet",
    "ShellAssignment",
    "SimConfig",
    "SimResult",
    "allocate_proportional",
    "degree",
    "degree_centrality",
    "eigenvector_centrality",
    "generate_synthetic",
    "k_shell_decompose",
    "pagerank",
    "parse_edge_list",
    "read_edge_list",
    "select_kshell_baseline",
    "select_ks_hp",
    "select_ks_p",
    "select_seeds",
    "select_top_by_score",
    "shell_populations",
    "simulate_mean",
    "simulate_once",
    "to_edge_list",
]
