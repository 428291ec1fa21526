"""Placement validation against a constraint system."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .constraints import LineSystem
from .errors import InvalidInputError
from .geometry import BoardGeometry, Line, Placement, Point, collinear


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a validity check.

    On failure, ``witness`` holds the lexicographically least offending
    triple (by sorted flat indices) together with a line containing it; on a
    bare-geometry check the line slot may be None.
    """

    ok: bool
    witness: Optional[tuple[tuple[Point, Point, Point], Optional[Line]]] = None


def _containing_line(system: LineSystem, triple: tuple[Point, Point, Point]) -> Optional[Line]:
    for ln in system.lines:
        s = ln.point_set
        if all(p in s for p in triple):
            return ln
    return None


def check_placement(system: LineSystem, placement: Placement) -> CheckResult:
    """Whether no three placement points are collinear.

    Runs in O(d^2) pair lookups for d points via the pair-exclusion map.
    """
    if placement.geometry != system.geometry:
        raise InvalidInputError("placement and system are on different boards")
    geom = system.geometry
    idx = placement.indices()
    excl = system.pair_exclusion
    for ai in range(len(idx)):
        for bi in range(ai + 1, len(idx)):
            third = excl.get((idx[ai], idx[bi]))
            if not third:
                continue
            for k in idx[bi + 1:]:
                if k in third:
                    triple = (geom.point(idx[ai]), geom.point(idx[bi]), geom.point(k))
                    return CheckResult(False, (triple, _containing_line(system, triple)))
    return CheckResult(True)


def check_collinear_free(geom: BoardGeometry, placement: Placement) -> CheckResult:
    """Triple-by-triple validity check straight from the geometry.

    Slower (O(d^3) collinearity tests) but needs no precomputed constraint
    system, so it scales to boards whose full triple list would be huge.
    """
    if placement.geometry != geom:
        raise InvalidInputError("placement and geometry disagree")
    pts = placement.sorted_points
    for a, b, c in combinations(pts, 3):
        if collinear(geom, a, b, c):
            return CheckResult(False, ((a, b, c), None))
    return CheckResult(True)


def count_collinear_triples(system: LineSystem, placement: Placement) -> int:
    """Number of collinear triples inside a placement (0 iff valid)."""
    if placement.geometry != system.geometry:
        raise InvalidInputError("placement and system are on different boards")
    idx = placement.indices()
    excl = system.pair_exclusion
    count = 0
    for ai in range(len(idx)):
        for bi in range(ai + 1, len(idx)):
            third = excl.get((idx[ai], idx[bi]))
            if not third:
                continue
            for k in idx[bi + 1:]:
                if k in third:
                    count += 1
    return count
