"""Exact saddle connections and maximal cylinders on flat cone surfaces."""
from .exactnum import Field, Scalar, parse_expr, format_expr
from .surface import FlatSurface, SurfaceError, build_surface, euler_genus, gauss_bonnet_check
from .fileformat import ParseError, parse_surface, format_surface, read_surface
from .holonomy import holonomy_order, trivializing_cover, verify_cover
from .flow import FlowError, LimitError, saddle_connections, flow_sq
from .cylinder import Cylinder, CurveTrace, enumerate_cylinders, closed_geodesic, crossing_counts, crossing_word
from .curvegraph import geometric_intersection, disjointness_graph

__all__ = [
    "Field", "Scalar", "parse_expr", "format_expr",
    "FlatSurface", "SurfaceError", "build_surface", "euler_genus", "gauss_bonnet_check",
    "ParseError", "parse_surface", "format_surface", "read_surface",
    "holonomy_order", "trivializing_cover", "verify_cover",
    "FlowError", "LimitError", "saddle_connections", "flow_sq",
    "Cylinder", "CurveTrace", "enumerate_cylinders", "closed_geodesic", "crossing_counts", "crossing_word",
    "geometric_intersection", "disjointness_graph",
]
