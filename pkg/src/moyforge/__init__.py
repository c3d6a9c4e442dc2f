"""moyforge: MOY polynomials of colored trivalent graphs.

Exact Laurent-polynomial evaluation by local rewriting, subset-coloring
counts (the q = 1 specialization), numerical decorations by subspaces and
their SU(N) representations, and a PD-code front end for link invariants.
"""

from .graph import ColoredGraph, Edge, GraphExpr, MERGE, SPLIT, validate
from .laurent import LaurentPoly, quantum_binomial, quantum_integer
from .rewrite import Evaluator, IrreducibleGraph, evaluate
from .states import count_colorings, enumerate_colorings

__version__ = "0.1.0"

__all__ = [
    "ColoredGraph",
    "Edge",
    "GraphExpr",
    "MERGE",
    "SPLIT",
    "validate",
    "LaurentPoly",
    "quantum_integer",
    "quantum_binomial",
    "Evaluator",
    "IrreducibleGraph",
    "evaluate",
    "count_colorings",
    "enumerate_colorings",
]
