from itertools import combinations

import pytest

from no3line.checker import check_collinear_free, check_placement
from no3line.constraints import build_line_system
from no3line.errors import (
    BoardTooLargeError,
    SolveTimeoutError,
    UnsupportedGeometryError,
)
from no3line.geometry import Placement, Point, lattice, torus
from no3line.solver import (
    naive_profile,
    profile,
    solve_max,
    upper_bound,
)


# --------------------------------------------------------------------------
# exact maxima and counts on frozen small boards

def test_torus_3x3():
    res = solve_max(build_line_system(torus(3, 3)), count_all=True)
    assert res.T == 4
    assert res.count_max == 6
    assert res.count_max_raw == 54
    assert res.witness.sorted_points == (
        Point(0, 0), Point(0, 1), Point(1, 0), Point(1, 1))


def test_lattice_3x3():
    res = solve_max(build_line_system(lattice(3, 3)), count_all=True)
    assert (res.T, res.count_max, res.count_max_raw) == (6, 2, 2)


def test_witness_is_valid_and_least():
    for g in (torus(3, 3), torus(4, 4), lattice(3, 4)):
        sys_ = build_line_system(g)
        res = solve_max(sys_)
        assert len(res.witness) == res.T
        assert check_placement(sys_, res.witness).ok
        # no lexicographically smaller witness of the same size exists
        idx = res.witness.indices()
        for smaller in combinations(range(max(idx) + 1), res.T):
            if smaller >= idx:
                break
            pl = Placement.of(g, [g.point(i) for i in smaller])
            assert not check_placement(sys_, pl).ok


def test_count_none_without_count_all():
    res = solve_max(build_line_system(torus(3, 3)))
    assert res.count_max is None and res.count_max_raw is None


def test_stats_populated():
    res = solve_max(build_line_system(torus(4, 4)), threads=2)
    assert res.stats.nodes > 0
    assert res.stats.elapsed >= 0.0
    assert res.stats.threads == 2


# --------------------------------------------------------------------------
# translation-orbit counting against an independent enumeration

def _orbit_count_brute(g, size):
    pts = list(g.points())
    solutions = [frozenset(s) for s in combinations(pts, size)
                 if check_collinear_free(g, Placement.of(g, s)).ok]
    seen, orbits = set(), 0
    for s in solutions:
        if s in seen:
            continue
        orbits += 1
        for tx in range(g.m):
            for ty in range(g.n):
                seen.add(frozenset(
                    Point((p.x + tx) % g.m, (p.y + ty) % g.n) for p in s))
    return len(solutions), orbits


@pytest.mark.parametrize("m,n", [(3, 3), (2, 4), (2, 6), (3, 4), (4, 4)])
def test_orbit_count_matches_brute_force(m, n):
    g = torus(m, n)
    res = solve_max(build_line_system(g), count_all=True)
    raw, orbits = _orbit_count_brute(g, res.T)
    assert res.count_max_raw == raw
    assert res.count_max == orbits


def test_lattice_counts_are_raw():
    res = solve_max(build_line_system(lattice(4, 4)), count_all=True)
    assert (res.T, res.count_max) == (8, 11)
    assert res.count_max == res.count_max_raw


# --------------------------------------------------------------------------
# certified upper bounds

def test_upper_bound_examples():
    assert upper_bound(build_line_system(torus(2, 2))) == 4
    assert upper_bound(build_line_system(torus(3, 9))) == 6
    assert upper_bound(build_line_system(torus(5, 5))) == 6
    assert upper_bound(build_line_system(torus(7, 7))) == 8


def test_upper_bound_torus_only():
    with pytest.raises(UnsupportedGeometryError):
        upper_bound(build_line_system(lattice(3, 3)))


def test_upper_bound_never_below_maximum():
    for m, n in [(2, 4), (3, 3), (3, 6), (4, 4), (4, 6), (5, 5)]:
        sys_ = build_line_system(torus(m, n))
        assert solve_max(sys_).T <= upper_bound(sys_)


# --------------------------------------------------------------------------
# profiles

def test_profile_frozen_values():
    assert list(profile(build_line_system(torus(2, 2))).counts) == [1, 4, 6, 4, 1]
    assert list(profile(build_line_system(torus(3, 3))).counts) == [1, 9, 36, 72, 54]


def test_profile_structure():
    prof = profile(build_line_system(torus(3, 3)))
    assert prof.T == 4
    assert prof.solutions_at_max == 54
    assert prof.counts[0] == 1
    assert prof.counts[1] == 9


@pytest.mark.parametrize("g", [torus(3, 4), torus(2, 6), lattice(3, 4), lattice(4, 4)])
def test_profile_matches_naive(g):
    sys_ = build_line_system(g)
    assert list(profile(sys_).counts) == list(naive_profile(sys_).counts)


def test_profile_consistent_with_solver():
    for g in (torus(3, 4), lattice(3, 4)):
        sys_ = build_line_system(g)
        prof = profile(sys_)
        res = solve_max(sys_, count_all=True)
        assert prof.T == res.T
        assert prof.solutions_at_max == res.count_max_raw


def test_size_limits():
    with pytest.raises(BoardTooLargeError):
        naive_profile(build_line_system(torus(5, 6)))
    with pytest.raises(BoardTooLargeError):
        profile(build_line_system(torus(5, 10)))
    # an explicit limit overrides the default cap
    prof = profile(build_line_system(torus(5, 10)), limit=50)
    assert prof.T == 6


# --------------------------------------------------------------------------
# timeout and determinism

def test_timeout_raises_with_bounds():
    sys_ = build_line_system(torus(6, 12))
    with pytest.raises(SolveTimeoutError) as exc:
        solve_max(sys_, time_limit=1e-4)
    err = exc.value
    assert 0 <= err.lower_bound <= 8 <= err.upper_bound
    assert err.elapsed >= 0.0


def test_thread_count_does_not_change_results():
    sys_ = build_line_system(torus(5, 5))
    runs = [solve_max(sys_, count_all=True, threads=k) for k in (1, 3)]
    assert len({(r.T, r.count_max, r.witness.sorted_points) for r in runs}) == 1


def test_repeated_solves_identical():
    sys_ = build_line_system(lattice(4, 4))
    a = solve_max(sys_, count_all=True)
    b = solve_max(sys_, count_all=True)
    assert (a.T, a.count_max, a.witness.sorted_points) == (
        b.T, b.count_max, b.witness.sorted_points)
