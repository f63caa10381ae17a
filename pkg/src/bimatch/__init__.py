"""Exact analysis toolkit for maximum matchings in bipartite multigraphs."""

from .bounds import BoundReport, BoundViolation, applicable_bounds
from .constructions import REGISTRY, construct
from .ears import EarDecomposition, odd_ear_decomposition, validate_ear_decomposition
from .graph import Bigraph, build, from_json, from_matrix, params, parse_graph, to_json
from .matching import MatchCount, count_max_matchings, count_max_matchings_oracle, count_x_matchings, permanent
from .normalize import ShiftStep, merge_y, normalize_lemma22
from .search import (
    ClassConstraint,
    VerifyReport,
    canonical_form,
    check_extremal_structure,
    enumerate_class,
    find_min_phi,
    verify_all,
    verify_theorem,
)
from .structure import StructureReport, analyze, hall_check, tight_sets

__version__ = "0.1.0"

__all__ = [
    "Bigraph",
    "build",
    "from_matrix",
    "from_json",
    "to_json",
    "parse_graph",
    "params",
    "MatchCount",
    "count_max_matchings",
    "count_max_matchings_oracle",
    "count_x_matchings",
    "permanent",
    "StructureReport",
    "analyze",
    "hall_check",
    "tight_sets",
    "EarDecomposition",
    "odd_ear_decomposition",
    "validate_ear_decomposition",
    "BoundReport",
    "BoundViolation",
    "applicable_bounds",
    "REGISTRY",
    "construct",
    "ShiftStep",
    "normalize_lemma22",
    "merge_y",
    "ClassConstraint",
    "VerifyReport",
    "canonical_form",
    "check_extremal_structure",
    "enumerate_class",
    "find_min_phi",
    "verify_all",
    "verify_theorem",
]
