"""Drawing-existence checks for AT-graphs on complete graphs."""

__version__ = "0.1.0"

from .core import ATGraph, canonical_form, parse_atgraph, serialize_atgraph
from .database import Database, generate_database, load_database
from .simple import check_simple, compute_rotation_system
from .z2 import check_z2, check_z2_algebraic, realize_z2_constructive

__all__ = [
    "ATGraph",
    "Database",
    "canonical_form",
    "check_simple",
    "check_z2",
    "check_z2_algebraic",
    "compute_rotation_system",
    "generate_database",
    "load_database",
    "parse_atgraph",
    "realize_z2_constructive",
    "serialize_atgraph",
]
