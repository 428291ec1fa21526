"""Exact maximum search and placement-count profiles.

The search runs in phases so results never depend on thread scheduling:

A. branch-and-bound over tasks partitioned by smallest placed index gives
   the maximum T (tasks share a best-so-far hint; the maximum of per-task
   results is scheduling-independent);
B. a sequential first-hit pass at target T returns the lexicographically
   least maximum placement;
C. an optional counting pass sums per-task counts of T-point placements;
   on tori the count is then folded to translation orbits by Burnside's
   lemma, which is the usual convention for torus solution counts.
"""

from __future__ import annotations

import math
import threading
import time
from concurrent.futures import FIRST_COMPLETED, ThreadPoolExecutor, wait
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

import numpy as np

from . import backend
from .constraints import LineSystem, build_line_system
from .errors import BoardTooLargeError, InvalidInputError, SolveTimeoutError, UnsupportedGeometryError
from .geometry import (
    LATTICE,
    TORUS,
    BoardGeometry,
    Placement,
    _lattice_raw_lines,
    _through_map,
    collinear,
    enumerate_lines,
)

NAIVE_LIMIT = 25
PROFILE_LIMIT = 49
_MAX_CLASSES = 3


@dataclass(frozen=True)
class SearchStats:
    nodes: int
    pruned: int
    elapsed: float
    threads: int


@dataclass(frozen=True)
class SolveResult:
    """Maximum placement size with certificate and optional counts.

    On a torus the translation group maps solutions to solutions, and the
    conventional solution count is per translation orbit: ``count_max`` is
    the orbit count there (Burnside, exact) and the raw placement count is
    kept in ``count_max_raw``.  On a lattice both numbers coincide.
    """

    T: int
    witness: Placement
    count_max: Optional[int]
    stats: SearchStats
    count_max_raw: Optional[int] = None


@dataclass(frozen=True)
class PlacementProfile:
    """counts[d] = number of valid d-point placements, d = 0..T."""

    counts: tuple[int, ...]
    T: int
    solutions_at_max: int


# --------------------------------------------------------------------------
# parallel classes and certified upper bounds

def _parallel_classes(geom: BoardGeometry) -> list[tuple[int, list[tuple[int, ...]]]]:
    """Partitions of the board into parallel lines, with their size caps.

    Each class partitions all points; a block of b points admits at most
    min(b, 2) placed points, so the class value sum(min(b, 2)) bounds every
    valid placement.  Returns (value, blocks-as-index-tuples) per class.
    """
    if geom.kind == TORUS:
        source = enumerate_lines(geom, 3)
    else:
        source = _lattice_raw_lines(geom, 1)
    by_dir: dict = {}
    for ln in source:
        by_dir.setdefault(ln.direction, []).append(
            tuple(sorted(geom.index(p) for p in ln.points))
        )
    classes = []
    for dirn in sorted(by_dir):
        blocks = by_dir[dirn]
        value = sum(min(len(b), 2) for b in blocks)
        classes.append((value, blocks))
    classes.sort(key=lambda t: t[0])
    return classes


def _certified_upper(system: LineSystem) -> int:
    """A proven upper bound on the maximum placement size."""
    geom = system.geometry
    n_points = geom.size
    bound = n_points
    for value, _ in _parallel_classes(geom):
        bound = min(bound, value)
    if geom.kind == TORUS:
        n_pairs = n_points * (n_points - 1) // 2
        if len(system.pair_exclusion) == n_pairs and n_points >= 2:
            # every pair lies on some constraint line: one placed point sees
            # all others through at most lambda lines, two per line
            lam = min(len(t) for t in _through_map(geom))
            bound = min(bound, lam + 1)
        m, n = geom.m, geom.n
        if m == n and m % 2 == 1 and _is_prime(m):
            bound = min(bound, m + 1)
    return bound


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % f for f in range(2, int(math.isqrt(n)) + 1))


def upper_bound(system: LineSystem) -> int:
    """Best proven torus upper bound (parallel classes, pair covers, odd
    prime squares)."""
    if system.geometry.kind != TORUS:
        raise UnsupportedGeometryError("certified upper bounds are implemented for tori")
    return _certified_upper(system)


# --------------------------------------------------------------------------
# counting solutions up to translation (torus)

def _adds_no_triple(union: set, block, excl) -> bool:
    """Whether extending ``union`` by ``block`` stays triple-free.

    Any new collinear triple must use a new point, so pairs with at least
    one endpoint in ``block`` are the only ones to check.
    """
    combined = union | set(block)
    for y in block:
        for x in combined:
            if x == y:
                continue
            pair = (x, y) if x < y else (y, x)
            third = excl.get(pair)
            if third and not third.isdisjoint(combined):
                return False
    return True


def _fixed_count(system: LineSystem, T: int, tx: int, ty: int) -> int:
    """Number of valid T-placements invariant under translation by (tx, ty).

    An invariant placement is a union of point orbits of the translation,
    which all share one length, so T must split into whole orbits.
    """
    geom = system.geometry
    m, n = geom.m, geom.n
    order = ((m // math.gcd(tx, m)) * (n // math.gcd(ty, n))
             // math.gcd(m // math.gcd(tx, m), n // math.gcd(ty, n)))
    if T % order:
        return 0
    want = T // order
    total_pts = m * n
    seen = bytearray(total_pts)
    blocks = []
    for s in range(total_pts):
        if seen[s]:
            continue
        blk = []
        x, y = s // n, s % n
        while not seen[x * n + y]:
            seen[x * n + y] = 1
            blk.append(x * n + y)
            x, y = (x + tx) % m, (y + ty) % n
        blocks.append(tuple(sorted(blk)))
    excl = system.pair_exclusion
    blocks = [b for b in blocks if _adds_no_triple(set(), b, excl)]

    def count_from(i: int, chosen: set, left: int) -> int:
        if left == 0:
            return 1
        total = 0
        for bi in range(i, len(blocks) - left + 1):
            if _adds_no_triple(chosen, blocks[bi], excl):
                total += count_from(bi + 1, chosen | set(blocks[bi]), left - 1)
        return total

    return count_from(0, set(), want)


def _translation_orbit_count(system: LineSystem, T: int, raw: int) -> int:
    """Exact number of translation orbits of maximum placements (Burnside)."""
    geom = system.geometry
    m, n = geom.m, geom.n
    total = raw  # the identity fixes every solution
    for ti in range(1, m * n):
        total += _fixed_count(system, T, ti // n, ti % n)
    orbits, remainder = divmod(total, m * n)
    if remainder:
        raise RuntimeError("orbit count is not integral; counting is inconsistent")
    return orbits


# --------------------------------------------------------------------------
# kernel context

class _Context:
    def __init__(self, system: LineSystem):
        geom = system.geometry
        n = geom.size
        w = max(1, (n + 63) >> 6)
        excl = np.zeros((n, n, w), np.uint64)
        for (i, j), third in system.pair_exclusion.items():
            for k in third:
                excl[i, j, k >> 6] |= np.uint64(1) << np.uint64(k & 63)
        ut = np.transpose(excl, (1, 0, 2))
        excl = excl | ut
        future = np.zeros((n, w), np.uint64)
        for p in range(n):
            for q in range(p + 1, n):
                future[p, q >> 6] |= np.uint64(1) << np.uint64(q & 63)
        blocks = []
        ptr = [0]
        for value, blist in _parallel_classes(geom)[:_MAX_CLASSES]:
            if value >= n and n > 2:
                continue
            blocks.extend(blist)
            ptr.append(len(blocks))
        n_blocks = max(1, len(blocks))
        cos_mask = np.zeros((n_blocks, w), np.uint64)
        cos_cap = np.zeros(n_blocks, np.int64)
        for bi, blk in enumerate(blocks):
            for k in blk:
                cos_mask[bi, k >> 6] |= np.uint64(1) << np.uint64(k & 63)
            cos_cap[bi] = min(len(blk), 2)
        self.n_points = n
        self.words = w
        self.excl = excl
        self.future = future
        self.cos_mask = cos_mask
        self.cos_cap = cos_cap
        self.class_ptr = np.array(ptr, np.int64)
        self.upper = _certified_upper(system)


_contexts: dict[LineSystem, _Context] = {}


def _context(system: LineSystem) -> _Context:
    ctx = _contexts.get(system)
    if ctx is None:
        ctx = _Context(system)
        _contexts[system] = ctx
    return ctx


# --------------------------------------------------------------------------
# stop signalling

class _Watchdog:
    """Asserts a stop flag once the deadline passes (and keeps asserting,
    so a consumed stop request cannot be lost)."""

    def __init__(self, ctrl: np.ndarray, deadline: Optional[float]):
        self._ctrl = ctrl
        self._deadline = deadline
        self._done = threading.Event()
        self._thread = None
        if deadline is not None:
            self._thread = threading.Thread(target=self._run, daemon=True)
            self._thread.start()

    def _run(self):
        while not self._done.wait(0.02):
            if time.perf_counter() >= self._deadline:
                self._ctrl[1] = 1

    def expired(self) -> bool:
        return self._deadline is not None and time.perf_counter() >= self._deadline

    def close(self):
        self._done.set()
        if self._thread is not None:
            self._thread.join()


# --------------------------------------------------------------------------
# solving

def _run_task(kernel, ctx, mode, target, first, ctrl, upper):
    n = ctx.n_points
    counts = np.zeros(n + 2, np.int64)
    witness = np.zeros(n + 2, np.int64)
    stats = np.zeros(2, np.int64)
    r = kernel(mode, target, first, ctx.excl, ctx.future, ctx.cos_mask,
               ctx.cos_cap, ctx.class_ptr, upper, ctrl, counts, witness, stats)
    return int(r), counts, witness, stats


def solve_max(system: LineSystem, count_all: bool = False,
              time_limit: Optional[float] = None, threads: int = 1) -> SolveResult:
    """Exact maximum placement size, a witness, and optionally the count of
    maximum placements.

    Results are independent of ``threads``; search statistics are not.
    Raises SolveTimeoutError with the bounds proven so far if the limit hits.
    """
    if threads < 1:
        raise InvalidInputError("threads must be at least 1")
    if time_limit is not None and time_limit <= 0:
        raise InvalidInputError("time_limit must be positive")
    ctx = _context(system)
    kernel = backend.dfs_task()
    n = ctx.n_points
    start = time.perf_counter()
    deadline = None if time_limit is None else start + time_limit
    ctrl = np.zeros(2, np.int64)
    dog = _Watchdog(ctrl, deadline)
    nodes = pruned = 0
    try:
        # phase A: exact maximum
        best = 0
        timed_out = False
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futs = [pool.submit(_run_task, kernel, ctx, 0, 0, f, ctrl, ctx.upper)
                    for f in range(n)]
            stopped_at = len(futs)
            for i, fut in enumerate(futs):
                r, _, wit, st = fut.result()
                nodes += int(st[0])
                pruned += int(st[1])
                if r == -1:
                    timed_out = True
                    best = max(best, int(wit[0]))
                    continue
                best = max(best, r)
                if best >= ctx.upper:
                    ctrl[1] = 2
                    stopped_at = i
                    for rest in futs[i + 1:]:
                        rest.cancel()
                    break
            for fut in futs[stopped_at + 1:]:
                if fut.cancelled():
                    continue
                r, _, wit, st = fut.result()
                nodes += int(st[0])
                pruned += int(st[1])
        best = max(best, int(ctrl[0]))
        if timed_out:
            raise SolveTimeoutError(
                f"time limit of {time_limit}s hit while maximizing",
                lower_bound=best, upper_bound=ctx.upper,
                elapsed=time.perf_counter() - start)
        T = best
        ctrl[1] = 0  # consume any early-exit request; the watchdog reasserts

        # phase B: lexicographically least witness, sequential
        witness_idx = None
        for f in range(n):
            if dog.expired():
                raise SolveTimeoutError(
                    f"time limit of {time_limit}s hit while extracting a witness",
                    lower_bound=T, upper_bound=T,
                    elapsed=time.perf_counter() - start)
            r, _, wit, st = _run_task(kernel, ctx, 3, T, f, ctrl, n + 1)
            nodes += int(st[0])
            pruned += int(st[1])
            if r == -1:
                raise SolveTimeoutError(
                    f"time limit of {time_limit}s hit while extracting a witness",
                    lower_bound=T, upper_bound=T,
                    elapsed=time.perf_counter() - start)
            if r == 1:
                witness_idx = [int(v) for v in wit[1:1 + T]]
                break
        if witness_idx is None:
            raise RuntimeError("no witness at the proven maximum; search is inconsistent")
        geom = system.geometry
        witness = Placement.of(geom, [geom.point(i) for i in witness_idx])

        # phase C: count maximum placements
        count_max = count_raw = None
        if count_all:
            total = 0
            with ThreadPoolExecutor(max_workers=threads) as pool:
                futs = [pool.submit(_run_task, kernel, ctx, 1, T, f, ctrl, n + 1)
                        for f in range(n)]
                for fut in futs:
                    r, cnts, _, st = fut.result()
                    nodes += int(st[0])
                    pruned += int(st[1])
                    if r == -1:
                        raise SolveTimeoutError(
                            f"time limit of {time_limit}s hit while counting",
                            lower_bound=T, upper_bound=T,
                            elapsed=time.perf_counter() - start)
                    total += int(cnts[T])
            count_raw = total
            if system.geometry.kind == TORUS:
                count_max = _translation_orbit_count(system, T, count_raw)
            else:
                count_max = count_raw

        elapsed = time.perf_counter() - start
        return SolveResult(T, witness, count_max,
                           SearchStats(nodes, pruned, elapsed, threads),
                           count_max_raw=count_raw)
    finally:
        dog.close()


def profile(system: LineSystem, limit: int = PROFILE_LIMIT) -> PlacementProfile:
    """Counts of valid placements of every size, by exhaustive search."""
    geom = system.geometry
    if geom.size > limit:
        raise BoardTooLargeError(
            f"board has {geom.size} points, profile limit is {limit}; "
            "raise the limit explicitly to force the computation")
    ctx = _context(system)
    kernel = backend.dfs_task()
    n = ctx.n_points
    ctrl = np.zeros(2, np.int64)
    total = np.zeros(n + 2, np.int64)
    total[0] = 1
    for f in range(n):
        _, cnts, _, _ = _run_task(kernel, ctx, 2, 0, f, ctrl, n + 1)
        total += cnts
    T = max(d for d in range(n + 1) if total[d] > 0)
    return PlacementProfile(tuple(int(v) for v in total[:T + 1]), T, int(total[T]))


def naive_profile(system: LineSystem) -> PlacementProfile:
    """Reference profile computed without the bitset kernel or the
    pair-exclusion map: collinearity is asked point-triple by point-triple
    from the geometry, and placements are enumerated by plain recursion."""
    geom = system.geometry
    n = geom.size
    if n > NAIVE_LIMIT:
        raise BoardTooLargeError(
            f"naive profile is capped at {NAIVE_LIMIT} points, board has {n}")
    pts = [geom.point(i) for i in range(n)]
    bad = set()
    for i, j, k in combinations(range(n), 3):
        if collinear(geom, pts[i], pts[j], pts[k]):
            bad.add((i, j, k))
    counts = [0] * (n + 1)
    counts[0] = 1
    members: list[int] = []

    def grow(lo: int):
        for c in range(lo, n):
            ok = True
            for ai in range(len(members)):
                a = members[ai]
                for bi in range(ai + 1, len(members)):
                    if (a, members[bi], c) in bad:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                members.append(c)
                counts[len(members)] += 1
                grow(c + 1)
                members.pop()

    grow(0)
    T = max(d for d in range(n + 1) if counts[d] > 0)
    return PlacementProfile(tuple(counts[:T + 1]), T, counts[T])
