"""Induced-D2 machinery for 3-uniform hypergraphs."""

from .core import (
    Graph,
    HomogeneityVerdict,
    Hypergraph3,
    Verdict,
    density_hypergraph,
    density_pair_xxy,
    density_triple,
    graph_density_pair,
    homogeneity_verdict,
    link_graph,
)
from .count import (
    D2Witness,
    count_induced_d2,
    count_induced_d2_at,
    count_induced_p4,
    estimate_induced_d2,
    find_d2_witnesses,
)
from .cograph import build_cotree, cograph_edit, cograph_partition, cotree_homogeneous_set, weighted_split
from .decomp import certify_link_pair, certify_triple, main_partition, vertex_split
from .removal import EditSet, is_cohypergraph, removal_edit, verify_d2_free
from .eh import brute_force_homogeneous, dense_clique, eh_find, eh_parameters, sparse_independent_set
from .io import parse_graph, parse_h3, serialize_graph, serialize_h3
from .experiment import run_experiment

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "HomogeneityVerdict",
    "Hypergraph3",
    "Verdict",
    "density_hypergraph",
    "density_pair_xxy",
    "density_triple",
    "graph_density_pair",
    "homogeneity_verdict",
    "link_graph",
    "D2Witness",
    "count_induced_d2",
    "count_induced_d2_at",
    "count_induced_p4",
    "estimate_induced_d2",
    "find_d2_witnesses",
    "build_cotree",
    "cograph_edit",
    "cograph_partition",
    "cotree_homogeneous_set",
    "weighted_split",
    "certify_link_pair",
    "certify_triple",
    "main_partition",
    "vertex_split",
    "EditSet",
    "is_cohypergraph",
    "removal_edit",
    "verify_d2_free",
    "brute_force_homogeneous",
    "dense_clique",
    "eh_find",
    "eh_parameters",
    "sparse_independent_set",
    "parse_graph",
    "parse_h3",
    "serialize_graph",
    "serialize_h3",
    "run_experiment",
]
