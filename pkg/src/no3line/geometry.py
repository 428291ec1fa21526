"""Boards, points, directions and lines.

Two board kinds are supported:

* ``torus``   -- the group Z_m x Z_n.  A line is a maximal coset of a cyclic
  subgroup <(a, b)> whose generator lifts to a primitive integer vector, i.e.
  the coset is the image of an honest integer line under the quotient map
  Z^2 -> Z_m x Z_n.
* ``lattice`` -- the finite grid [0, m) x [0, n) in Z^2.  A line is a maximal
  run of grid points in a primitive direction.

Lines of fewer than three points impose no constraint on point placements,
so enumeration defaults to ``min_size=3``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator, NamedTuple

from .errors import InvalidInputError, UnsupportedGeometryError

TORUS = "torus"
LATTICE = "lattice"


class Point(NamedTuple):
    x: int
    y: int


class Direction(NamedTuple):
    """A slope, stored as the lexicographically least generator."""

    a: int
    b: int


@dataclass(frozen=True)
class BoardGeometry:
    """An m x n board, either toroidal or flat."""

    kind: str
    m: int
    n: int

    def __post_init__(self):
        if self.kind not in (TORUS, LATTICE):
            raise UnsupportedGeometryError(f"unknown board kind {self.kind!r}")
        if self.m < 1 or self.n < 1:
            raise InvalidInputError("board dimensions must be positive")

    @property
    def size(self) -> int:
        return self.m * self.n

    def normalize(self, p) -> Point:
        """Map a raw coordinate pair onto the board.

        Torus coordinates are reduced modulo (m, n); lattice coordinates must
        already lie in range.
        """
        x, y = int(p[0]), int(p[1])
        if self.kind == TORUS:
            return Point(x % self.m, y % self.n)
        if not (0 <= x < self.m and 0 <= y < self.n):
            raise InvalidInputError(f"point ({x}, {y}) outside {self.m}x{self.n} lattice")
        return Point(x, y)

    def index(self, p) -> int:
        """Flat index of a point, x * n + y."""
        q = self.normalize(p)
        return q.x * self.n + q.y

    def point(self, i: int) -> Point:
        if not 0 <= i < self.size:
            raise InvalidInputError(f"index {i} out of range")
        return Point(i // self.n, i % self.n)

    def points(self) -> Iterator[Point]:
        for x in range(self.m):
            for y in range(self.n):
                yield Point(x, y)


def torus(m: int, n: int) -> BoardGeometry:
    return BoardGeometry(TORUS, m, n)


def lattice(m: int, n: int) -> BoardGeometry:
    return BoardGeometry(LATTICE, m, n)


@dataclass(frozen=True)
class Line:
    """A maximal collinear point set, sorted by flat index."""

    points: tuple[Point, ...]
    direction: Direction

    @property
    def size(self) -> int:
        return len(self.points)

    @cached_property
    def point_set(self) -> frozenset:
        return frozenset(self.points)

    def __contains__(self, p) -> bool:
        return p in self.point_set

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class LineSet:
    geometry: BoardGeometry
    lines: tuple[Line, ...]

    def __iter__(self) -> Iterator[Line]:
        return iter(self.lines)

    def __len__(self) -> int:
        return len(self.lines)

    def __getitem__(self, i) -> Line:
        return self.lines[i]


@dataclass(frozen=True)
class Placement:
    """A set of points on a board."""

    geometry: BoardGeometry
    points: frozenset

    @classmethod
    def of(cls, geometry: BoardGeometry, pts) -> "Placement":
        seen = []
        for p in pts:
            q = geometry.normalize(p)
            if q in seen:
                raise InvalidInputError(f"duplicate point {tuple(q)}")
            seen.append(q)
        return cls(geometry, frozenset(seen))

    @property
    def sorted_points(self) -> tuple[Point, ...]:
        return tuple(sorted(self.points, key=self.geometry.index))

    def indices(self) -> tuple[int, ...]:
        return tuple(sorted(self.geometry.index(p) for p in self.points))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    def __contains__(self, p) -> bool:
        return p in self.points


# --------------------------------------------------------------------------
# torus subgroups

def _subgroup_points(m: int, n: int, a: int, b: int) -> tuple[Point, ...]:
    """All multiples of (a, b) in Z_m x Z_n, in order of generation."""
    pts = []
    x, y = 0, 0
    while True:
        pts.append(Point(x, y))
        x, y = (x + a) % m, (y + b) % n
        if x == 0 and y == 0:
            return tuple(pts)


@lru_cache(maxsize=None)
def _liftable_subgroups(geom: BoardGeometry):
    """Cyclic subgroups of the torus generated by liftable directions.

    A residue direction (a, b) lifts to a primitive integer vector exactly
    when gcd(a, b, gcd(m, n)) == 1; a subgroup is recorded once, under its
    lexicographically least liftable generator.  Returns a list of
    (Direction, frozenset-of-points) sorted by direction.
    """
    m, n, d = geom.m, geom.n, math.gcd(geom.m, geom.n)
    by_elements: dict[frozenset, Direction] = {}
    for a in range(m):
        for b in range(n):
            if math.gcd(a, b, d) != 1:
                continue
            group = frozenset(_subgroup_points(m, n, a, b))
            cur = by_elements.get(group)
            if cur is None or (a, b) < tuple(cur):
                by_elements[group] = Direction(a, b)
    return sorted(((dirn, grp) for grp, dirn in by_elements.items()), key=lambda t: t[0])


def liftable_directions(geom: BoardGeometry) -> tuple[Direction, ...]:
    """Canonical generators of the liftable cyclic subgroups of a torus."""
    if geom.kind != TORUS:
        raise UnsupportedGeometryError("liftable directions are a torus notion")
    return tuple(dirn for dirn, _ in _liftable_subgroups(geom))


# --------------------------------------------------------------------------
# line enumeration

def _torus_raw_lines(geom: BoardGeometry, min_size: int) -> list[Line]:
    m, n, total = geom.m, geom.n, geom.size
    out = []
    for dirn, group in _liftable_subgroups(geom):
        if len(group) < min_size:
            continue
        offsets = sorted(group, key=geom.index)
        covered = bytearray(total)
        for i in range(total):
            if covered[i]:
                continue
            bx, by = geom.point(i)
            coset = sorted(
                (Point((bx + p.x) % m, (by + p.y) % n) for p in offsets),
                key=geom.index,
            )
            for p in coset:
                covered[geom.index(p)] = 1
            out.append(Line(tuple(coset), dirn))
    return out


def _lattice_directions(m: int, n: int) -> list[Direction]:
    """Primitive slopes that can join two points of an m x n grid.

    Canonical form: dx > 0, or dx == 0 and dy > 0.
    """
    dirs = []
    for dx in range(0, m):
        lo = 1 if dx == 0 else -(n - 1)
        for dy in range(lo, n):
            if dx == 0 and dy <= 0:
                continue
            if (dx, dy) == (0, 0) or math.gcd(dx, abs(dy)) != 1:
                continue
            if dx == 0 and dy != 1:
                continue
            if dy == 0 and dx != 1:
                continue
            dirs.append(Direction(dx, dy))
    return dirs


def _lattice_raw_lines(geom: BoardGeometry, min_size: int) -> list[Line]:
    m, n = geom.m, geom.n
    out = []
    for dirn in _lattice_directions(m, n):
        dx, dy = dirn
        for x in range(m):
            for y in range(n):
                px, py = x - dx, y - dy
                if 0 <= px < m and 0 <= py < n:
                    continue  # not the start of the run
                run = []
                cx, cy = x, y
                while 0 <= cx < m and 0 <= cy < n:
                    run.append(Point(cx, cy))
                    cx, cy = cx + dx, cy + dy
                if len(run) >= min_size:
                    out.append(Line(tuple(sorted(run, key=geom.index)), dirn))
    return out


def _maximal_only(lines: list[Line]) -> list[Line]:
    """Drop any line whose point set is strictly contained in another's.

    A strict superset of a line must pass through the line's first point, so
    only co-incident lines need comparing.
    """
    sets = [ln.point_set for ln in lines]
    incident: dict[Point, list[int]] = {}
    for j, ln in enumerate(lines):
        for p in ln.points:
            incident.setdefault(p, []).append(j)
    keep = []
    for i, ln in enumerate(lines):
        si = sets[i]
        if any(j != i and si < sets[j] for j in incident[ln.points[0]]):
            continue
        keep.append(ln)
    return keep


@lru_cache(maxsize=None)
def _lines_cached(geom: BoardGeometry, min_size: int) -> LineSet:
    if min_size < 2:
        raise InvalidInputError("min_size must be at least 2")
    raw = _torus_raw_lines(geom, min_size) if geom.kind == TORUS else _lattice_raw_lines(geom, min_size)
    uniq = list({ln.point_set: ln for ln in raw}.values())
    lines = sorted(
        _maximal_only(uniq),
        key=lambda ln: tuple(geom.index(p) for p in ln.points),
    )
    return LineSet(geom, tuple(lines))


def enumerate_lines(geom: BoardGeometry, min_size: int = 3) -> LineSet:
    """All inclusion-maximal lines of the board with at least min_size points."""
    return _lines_cached(geom, min_size)


@lru_cache(maxsize=None)
def _through_map(geom: BoardGeometry):
    """For each flat index, the tuple of ids of constraint lines through it."""
    lines = _lines_cached(geom, 3)
    through: list[list[int]] = [[] for _ in range(geom.size)]
    for li, ln in enumerate(lines):
        for p in ln.points:
            through[geom.index(p)].append(li)
    return tuple(tuple(t) for t in through)


def lines_through(geom: BoardGeometry, p) -> LineSet:
    """The constraint lines (>= 3 points) incident to a point."""
    q = geom.normalize(p)
    lines = _lines_cached(geom, 3)
    ids = _through_map(geom)[geom.index(q)]
    return LineSet(geom, tuple(lines[i] for i in ids))


def collinear(geom: BoardGeometry, p, q, r) -> bool:
    """Whether three distinct points lie on a common line of the board."""
    a, b, c = geom.normalize(p), geom.normalize(q), geom.normalize(r)
    if a == b or a == c or b == c:
        raise InvalidInputError("collinearity needs three distinct points")
    if geom.kind == LATTICE:
        return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x) == 0
    lines = _lines_cached(geom, 3)
    for li in _through_map(geom)[geom.index(a)]:
        s = lines[li].point_set
        if b in s and c in s:
            return True
    return False


# --------------------------------------------------------------------------
# independent collinearity oracle (torus)

@lru_cache(maxsize=None)
def _realizable_subgroups(geom: BoardGeometry, bound: int):
    """Subgroups <(a, b)> whose generator has a primitive lift.

    Found by brute force: scan integer lifts (a + s*m, b + t*n) for
    0 <= s, t < bound and keep (a, b) if some lift is primitive.
    """
    m, n = geom.m, geom.n
    groups = set()
    for a in range(m):
        for b in range(n):
            ok = False
            for s in range(bound):
                if ok:
                    break
                for t in range(bound):
                    if math.gcd(a + s * m, b + t * n) == 1:
                        ok = True
                        break
            if ok:
                groups.add(frozenset(_subgroup_points(m, n, a, b)))
    return tuple(groups)


def cover_oracle_collinear(geom: BoardGeometry, p, q, r, lift_bound: int | None = None) -> bool:
    """Slow reference collinearity test on the torus.

    Three points are collinear iff both differences q - p and r - p fall in
    one subgroup generated by a residue with a primitive integer lift.  Lifts
    are searched up to ``lift_bound`` (default 4 * (m + n)).
    """
    if geom.kind != TORUS:
        raise UnsupportedGeometryError("the cover oracle is defined on tori")
    if lift_bound is None:
        lift_bound = 4 * (geom.m + geom.n)
    if lift_bound < geom.m + geom.n:
        raise InvalidInputError("lift_bound too small to be conclusive")
    a, b, c = geom.normalize(p), geom.normalize(q), geom.normalize(r)
    if a == b or a == c or b == c:
        raise InvalidInputError("collinearity needs three distinct points")
    m, n = geom.m, geom.n
    dq = Point((b.x - a.x) % m, (b.y - a.y) % n)
    dr = Point((c.x - a.x) % m, (c.y - a.y) % n)
    for grp in _realizable_subgroups(geom, lift_bound):
        if dq in grp and dr in grp:
            return True
    return False
