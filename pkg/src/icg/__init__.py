"""Exact solvers and tooling for round-based independent-set coloring games.

Two players alternately color vertices of a graph; each round builds a
maximal independent set of the still-uncolored subgraph and receives one
color. Alice plays to finish in few rounds, Bob in many. Five turn-order
variants are supported, along with the classical coloring and marking
games, graph family generators, a verification harness, a CLI, and a
session service for interactive play.
"""

from .bitset import VertexSet
from .graph import CapacityError, Graph, Graph6Error, from_graph6, to_graph6

__all__ = [
    "CapacityError",
    "Graph",
    "Graph6Error",
    "VertexSet",
    "from_graph6",
    "to_graph6",
]

__version__ = "0.1.0"
