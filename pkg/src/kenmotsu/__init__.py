"""Exact tensor calculus for almost contact metric manifolds given by frames,
with Kenmotsu verification and *-k-Ricci-Yamabe soliton analysis."""

from .algebra import CoeffExpr, Term, const, symbol
from .connection import Connection, koszul_connection
from .manifold import FramedManifold, build_manifold
from .tensors import Endomorphism, FrameVectorField, Tensor02

__version__ = "0.1.0"

__all__ = [
    "CoeffExpr",
    "Connection",
    "Endomorphism",
    "FrameVectorField",
    "FramedManifold",
    "Tensor02",
    "Term",
    "__version__",
    "build_manifold",
    "const",
    "koszul_connection",
    "symbol",
]
