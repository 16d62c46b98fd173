"""Computational laboratory for Ramsey goodness of sparse graphs against cliques."""

from goodlab.errors import GoodlabError, Graph6Error, GraphError, InfeasibleError, PreconditionError, ScaleError
from goodlab.graph import Graph, GraphSpec, generate, make_graph

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "GraphSpec",
    "generate",
    "make_graph",
    "GoodlabError",
    "GraphError",
    "Graph6Error",
    "InfeasibleError",
    "PreconditionError",
    "ScaleError",
]
