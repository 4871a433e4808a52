"""Exact singularity and rank analysis of block graphs."""

from .blocks import ClassFlags, classify, decompose, is_b31, is_block_graph, p1_structure
from .engines import det_block_formula, reduce, schur_gamma
from .graph import LoopWeightedGraph, graph, parse_graph6, write_graph6
from .linalg import det_graph, nullity, rank_graph

__all__ = [
    "ClassFlags",
    "LoopWeightedGraph",
    "classify",
    "decompose",
    "det_block_formula",
    "det_graph",
    "graph",
    "is_b31",
    "is_block_graph",
    "nullity",
    "p1_structure",
    "parse_graph6",
    "rank_graph",
    "reduce",
    "schur_gamma",
    "write_graph6",
]
