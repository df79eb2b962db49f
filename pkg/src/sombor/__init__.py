"""Sombor index and the Sombor-like invariants SO1..SO6 on simple graphs."""

from .graph import Graph, LinkSpec, degree_pair_profile, make_graph
from .families import FamilySpec, generate
from .indices import IndexId, compute, index_from_profile, all_indices

__all__ = [
    "Graph", "LinkSpec", "make_graph", "degree_pair_profile",
    "FamilySpec", "generate",
    "IndexId", "compute", "index_from_profile", "all_indices",
]
