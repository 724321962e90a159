"""Mixed graphs near the Moore bound: bounds, certificates, constructions, search."""

from .bounds import moore_bound, moore_bound_k2, moore_bound_terms, order_11k, spectral_infeasibility_defect1
from .canon import are_isomorphic, canonical_form
from .certify import (
    check_graph,
    deficiency_sets,
    is_k_geodetic,
    matrix_identity_defect,
    matrix_identity_excess,
    moore_tree,
    outliers,
    repeats,
    structure_audit,
    total_regularity,
)
from .constructions import almost_moore_10, dihedral_cayley, excess_one_12, kautz_collapse
from .core import MixedGraph, count_nbt_walks, degrees, diameter, distance, neighborhoods
from .fileformat import parse_graph, serialize_graph
from .search import SearchSpec, enumerate_2factors, search_extremal

__all__ = [
    "MixedGraph",
    "SearchSpec",
    "almost_moore_10",
    "are_isomorphic",
    "canonical_form",
    "check_graph",
    "count_nbt_walks",
    "deficiency_sets",
    "degrees",
    "diameter",
    "dihedral_cayley",
    "distance",
    "enumerate_2factors",
    "excess_one_12",
    "is_k_geodetic",
    "kautz_collapse",
    "matrix_identity_defect",
    "matrix_identity_excess",
    "moore_bound",
    "moore_bound_k2",
    "moore_bound_terms",
    "moore_tree",
    "neighborhoods",
    "order_11k",
    "outliers",
    "parse_graph",
    "repeats",
    "search_extremal",
    "serialize_graph",
    "spectral_infeasibility_defect1",
    "structure_audit",
    "total_regularity",
]
