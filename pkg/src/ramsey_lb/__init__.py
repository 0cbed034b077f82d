"""Explicit Ramsey lower-bound witnesses from L(F)-free incidence structures."""

__version__ = "0.1.0"

from .graphs import BipartiteGraph, DegreeProfile, Graph, INFINITY, girth
from .budget import Budget

__all__ = [
    "BipartiteGraph",
    "Budget",
    "DegreeProfile",
    "Graph",
    "INFINITY",
    "girth",
    "__version__",
]
