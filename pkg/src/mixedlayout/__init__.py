"""Mixed stack/queue linear layouts: generation, validation, search and audits."""

from .graph import GklParams, Graph, TwoTree, build_gkl, gkl_size, subgraph_by_generation
from .layout import MIXED, LinearLayout, PageId, PageKind, PageSpec, crosses, nests, validate

__all__ = [
    "GklParams",
    "Graph",
    "LinearLayout",
    "MIXED",
    "PageId",
    "PageKind",
    "PageSpec",
    "TwoTree",
    "build_gkl",
    "crosses",
    "gkl_size",
    "nests",
    "subgraph_by_generation",
    "validate",
]
__version__ = "0.1.0"
