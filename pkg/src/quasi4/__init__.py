"""Decomposition of graphs into quasi-4-connected components, with the
tangle machinery that the decomposition is built from and verified against.
"""

from .graph import Graph, MinorModel, build_graph
from .separations import Separation, make_separation
from .tangles import Tangle, enumerate_tangles
from .decomposition import TreeDecomposition, decompose, validate_decomposition

__all__ = [
    "Graph", "MinorModel", "build_graph", "Separation", "make_separation",
    "Tangle", "enumerate_tangles", "TreeDecomposition", "decompose",
    "validate_decomposition",
]
