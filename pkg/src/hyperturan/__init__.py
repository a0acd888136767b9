"""Higher-order tournament hypergraphs, hereditary density defects and the
graph lemmas around them."""

from .core import DirectedFamily, Hypergraph, ShadowHypergraph, SizeGuardError
from .orientation import Orientation, Tournament, hypergraph_from_tournament, random_tournament

__all__ = [
    "DirectedFamily",
    "Hypergraph",
    "Orientation",
    "ShadowHypergraph",
    "SizeGuardError",
    "Tournament",
    "hypergraph_from_tournament",
    "random_tournament",
]
__version__ = "0.1.0"
