"""Exact no-three-in-line computations on discrete tori and lattices."""

from .backend import available as available_backends, current as current_backend, use as use_backend
from .cache import CACHE_VERSION, ResultCache, cache_get, cache_put
from .checker import CheckResult, check_collinear_free, check_placement, count_collinear_triples
from .constraints import IDEAL_FORMATS, LineSystem, build_line_system, emit_ideal
from .constructions import KnownValue, conic, parabola, predicted_value, prime_pq, prime_square
from .errors import (
    BoardTooLargeError,
    InvalidInputError,
    No3LineError,
    SolveTimeoutError,
    UnknownFormatError,
    UnsupportedGeometryError,
)
from .geometry import (
    BoardGeometry,
    Direction,
    Line,
    LineSet,
    Placement,
    Point,
    collinear,
    cover_oracle_collinear,
    enumerate_lines,
    lattice,
    liftable_directions,
    lines_through,
    torus,
)
from .solver import (
    PlacementProfile,
    SearchStats,
    SolveResult,
    naive_profile,
    profile,
    solve_max,
    upper_bound,
)

__version__ = "0.1.0"

__all__ = [
    "BoardGeometry", "Point", "Direction", "Line", "LineSet", "Placement",
    "torus", "lattice", "liftable_directions", "enumerate_lines",
    "lines_through", "collinear", "cover_oracle_collinear",
    "LineSystem", "build_line_system", "emit_ideal", "IDEAL_FORMATS",
    "CheckResult", "check_placement", "check_collinear_free",
    "count_collinear_triples",
    "KnownValue", "parabola", "prime_square", "conic", "prime_pq",
    "predicted_value",
    "SolveResult", "SearchStats", "PlacementProfile", "solve_max", "profile",
    "naive_profile", "upper_bound",
    "ResultCache", "cache_get", "cache_put", "CACHE_VERSION",
    "No3LineError", "InvalidInputError", "UnsupportedGeometryError",
    "UnknownFormatError", "BoardTooLargeError", "SolveTimeoutError",
    "available_backends", "current_backend", "use_backend",
    "__version__",
]
