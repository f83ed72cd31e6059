"""Generalised (r-)local complementation on graphs and graph states."""

__version__ = "0.1.0"

from .genlc import IncidenceReport, VertexMultiset, apply_rlc, is_r_incident, reduce_multiset
from .graph import Graph, InvalidGraphOperation
from .localsets import TypePartition, enumerate_mls, vertex_types
from .moves import LC, RLC, Move, Pivot, replay
from .standardform import is_standard_form, to_standard_form

__all__ = [
    "Graph", "IncidenceReport", "InvalidGraphOperation", "LC", "Move", "Pivot", "RLC", "TypePartition",
    "VertexMultiset", "__version__", "apply_rlc", "enumerate_mls", "is_r_incident", "is_standard_form",
    "reduce_multiset", "replay", "to_standard_form", "vertex_types",
]
