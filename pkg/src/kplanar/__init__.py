"""Exact tools for edge-density bounds of k-planar drawings."""

from .audit import check_report, crossing_profile, is_k_planar, is_min_k_planar, is_outer, skeleton_audit
from .drawing import Drawing, DrawingError, from_convex, from_geometry, from_json
from .planarization import planarize

__version__ = "0.1.0"

__all__ = [
    "Drawing", "DrawingError", "check_report", "crossing_profile", "from_convex", "from_geometry",
    "from_json", "is_k_planar", "is_min_k_planar", "is_outer", "planarize", "skeleton_audit",
]
