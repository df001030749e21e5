"""Bidirectional memory-based dialog translation.

A bilingual knowledge network of concept nodes and paired concept
sequences is traversed by a four-marker passing algorithm that analyzes
a source sentence and generates its target-language counterpart in the
same pass.  The same network serves both translation directions.
"""

from markermt.network import (
    MemoryNetwork,
    NetworkError,
    load_network,
    lookup_lexical,
    serialize_network,
    validate_network,
)
from markermt.translator import TranslationResult, round_trip, translate, trees_isomorphic

__all__ = [
    "MemoryNetwork",
    "NetworkError",
    "TranslationResult",
    "load_network",
    "lookup_lexical",
    "round_trip",
    "serialize_network",
    "translate",
    "trees_isomorphic",
    "validate_network",
]

__version__ = "0.1.0"
