"""signet: signed graphs and the bridges of frame-matroid cocircuits."""

__version__ = "0.1.0"

from .errors import GraphFormatError, HypothesisError, SignetError, SizeGuardError, UnknownElementError
from .graph import SignedGraph, half, link, load, loads, loop, loose
from .frame import FrameMatroid
from .oracle import OracleMatroid

__all__ = [
    "SignedGraph", "FrameMatroid", "OracleMatroid",
    "link", "loop", "half", "loose", "load", "loads",
    "SignetError", "GraphFormatError", "UnknownElementError", "SizeGuardError", "HypothesisError",
]
