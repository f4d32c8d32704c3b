"""Presentations and projective implicit representations of poset towers over GF(2)."""

from .poset import Poset, build_poset
from .tower import EdgeEvent, PosetTower, PointwiseTower, SimplexGenerator, extract, materialize, validate

__version__ = "0.1.0"

__all__ = [
    "Poset",
    "build_poset",
    "EdgeEvent",
    "PosetTower",
    "PointwiseTower",
    "SimplexGenerator",
    "extract",
    "materialize",
    "validate",
]
