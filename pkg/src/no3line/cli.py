"""Command-line interface.

Subcommands: lines, check, construct, solve, profile, table, emit-ideal.
Exit codes: 0 success, 1 a checked placement failed, 2 bad usage or input,
3 a search hit its time limit.  All coordinates are 0-indexed except inside
emitted ideal scripts, which are 1-indexed and say so in their header.
"""

from __future__ import annotations

import argparse
import json
import sys

from .cache import ResultCache, cache_get, cache_put
from .checker import check_collinear_free, check_placement
from .constraints import IDEAL_FORMATS, build_line_system, emit_ideal
from .constructions import conic, parabola, prime_pq, prime_square
from .errors import (
    BoardTooLargeError,
    InvalidInputError,
    No3LineError,
    SolveTimeoutError,
    UnknownFormatError,
    UnsupportedGeometryError,
)
from .geometry import BoardGeometry, Placement, Point, enumerate_lines
from .solver import naive_profile, profile, solve_max

_CONSTRUCTIONS = {
    "parabola": (parabola, False),
    "prime-square": (prime_square, False),
    "conic": (conic, False),
    "prime-pq": (prime_pq, True),
}


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _parse_range(text: str) -> range:
    parts = text.split("..")
    try:
        if len(parts) == 1:
            a = b = int(parts[0])
        elif len(parts) == 2:
            a, b = int(parts[0]), int(parts[1])
        else:
            raise ValueError
    except ValueError:
        raise InvalidInputError(f"expected A..B or a single integer, got {text!r}")
    if a < 1 or b < a:
        raise InvalidInputError(f"bad range {text!r}")
    return range(a, b + 1)


def parse_points(text: str, geom: BoardGeometry) -> list[Point]:
    """Parse \"x,y;x,y;...\" into distinct in-range points."""
    pts: list[Point] = []
    for pos, chunk in enumerate(text.split(";"), 1):
        chunk = chunk.strip()
        parts = [c.strip() for c in chunk.split(",")]
        if len(parts) != 2 or not chunk:
            raise InvalidInputError(f"point {pos}: expected 'x,y', got {chunk!r}")
        try:
            x, y = int(parts[0]), int(parts[1])
        except ValueError:
            raise InvalidInputError(f"point {pos}: expected integers, got {chunk!r}")
        if not (0 <= x < geom.m and 0 <= y < geom.n):
            raise InvalidInputError(
                f"point {pos}: ({x}, {y}) is outside the {geom.m}x{geom.n} board")
        p = Point(x, y)
        if p in pts:
            raise InvalidInputError(f"point {pos}: duplicate ({x}, {y})")
        pts.append(p)
    return pts


def _geom(args) -> BoardGeometry:
    return BoardGeometry(args.geometry, args.m, args.n)


def _fmt_point(p: Point) -> str:
    return f"({p.x},{p.y})"


# --------------------------------------------------------------------------
# subcommand handlers

def _cmd_lines(args) -> int:
    geom = _geom(args)
    ls = enumerate_lines(geom, args.min_size)
    if args.json:
        doc = {
            "kind": geom.kind, "m": geom.m, "n": geom.n,
            "min_size": args.min_size, "count": len(ls),
            "lines": [
                {"direction": list(ln.direction), "points": [list(p) for p in ln.points]}
                for ln in ls
            ],
        }
        print(json.dumps(doc, sort_keys=True, separators=(",", ":")))
        return 0
    print(f"{len(ls)} lines of >= {args.min_size} points on the {geom.kind} {geom.m}x{geom.n} board")
    for ln in ls:
        pts = " ".join(_fmt_point(p) for p in ln.points)
        print(f"  [{ln.size:2d}] dir ({ln.direction.a},{ln.direction.b}): {pts}")
    return 0


def _cmd_check(args) -> int:
    geom = _geom(args)
    pts = parse_points(args.points, geom)
    system = build_line_system(geom)
    placement = Placement.of(geom, pts)
    res = check_placement(system, placement)
    if res.ok:
        print(f"ok: {len(placement)} points, no three collinear")
        return 0
    triple, line = res.witness
    where = " ".join(_fmt_point(p) for p in triple)
    print(f"collinear triple: {where}")
    if line is not None:
        print(f"on line (dir ({line.direction.a},{line.direction.b})): "
              + " ".join(_fmt_point(p) for p in line.points))
    return 1


def _cmd_construct(args) -> int:
    builder, needs_q = _CONSTRUCTIONS[args.name]
    if needs_q:
        if args.q is None:
            raise InvalidInputError(f"construction {args.name} needs -q")
        placement = builder(args.p, args.q)
        label = f"{args.name}({args.p},{args.q})"
    else:
        placement = builder(args.p)
        label = f"{args.name}({args.p})"
    geom = placement.geometry
    print(f"{label} on the {geom.kind} {geom.m}x{geom.n} board: {len(placement)} points")
    print(" ".join(_fmt_point(p) for p in placement.sorted_points))
    if args.verify:
        res = check_collinear_free(geom, placement)
        if not res.ok:
            triple = res.witness[0]
            print("verification failed: collinear triple "
                  + " ".join(_fmt_point(p) for p in triple))
            return 1
        print(f"verified: no 3 of the {len(placement)} points are collinear")
    return 0


def _cmd_solve(args) -> int:
    geom = _geom(args)
    system = build_line_system(geom)
    res = solve_max(system, count_all=args.count_all,
                    time_limit=args.time_limit, threads=args.threads)
    if args.json:
        doc = {
            "kind": geom.kind, "m": geom.m, "n": geom.n, "T": res.T,
            "witness": [list(p) for p in res.witness.sorted_points],
            "count_max": res.count_max,
            "count_max_raw": res.count_max_raw,
            "stats": {"nodes": res.stats.nodes, "pruned": res.stats.pruned,
                      "elapsed": round(res.stats.elapsed, 6),
                      "threads": res.stats.threads},
        }
        print(json.dumps(doc, sort_keys=True, separators=(",", ":")))
        return 0
    print(f"{geom.kind} {geom.m}x{geom.n}: T = {res.T}")
    print("witness: " + " ".join(_fmt_point(p) for p in res.witness.sorted_points))
    if res.count_max is not None:
        if geom.kind == "torus" and res.count_max != res.count_max_raw:
            print(f"maximum placements: {res.count_max} up to translation "
                  f"({res.count_max_raw} in all)")
        else:
            print(f"maximum placements: {res.count_max}")
    print(f"nodes {res.stats.nodes}, pruned {res.stats.pruned}, "
          f"elapsed {res.stats.elapsed:.3f}s, threads {res.stats.threads}")
    return 0


def _cmd_profile(args) -> int:
    geom = _geom(args)
    system = build_line_system(geom)
    prof = naive_profile(system) if args.naive else profile(system, args.limit)
    if args.json:
        doc = {"kind": geom.kind, "m": geom.m, "n": geom.n, "T": prof.T,
               "counts": list(prof.counts), "solutions_at_max": prof.solutions_at_max}
        print(json.dumps(doc, sort_keys=True, separators=(",", ":")))
        return 0
    print(f"{geom.kind} {geom.m}x{geom.n} placement counts by size"
          + (" (naive)" if args.naive else ""))
    for d, c in enumerate(prof.counts):
        print(f"  {d:2d}: {c}")
    print(f"T = {prof.T}, placements at maximum = {prof.solutions_at_max}")
    return 0


def _cmd_table(args) -> int:
    rows = _parse_range(args.rows)
    cols = _parse_range(args.cols)
    kind = args.geometry
    cache = ResultCache.load(args.cache)
    memo: dict[tuple[int, int], object] = {}

    def cell(m: int, n: int):
        key = (min(m, n), max(m, n))
        if key in memo:
            return memo[key]
        rec = cache_get(cache, kind, *key)
        if rec is not None:
            memo[key] = rec["T"]
            return rec["T"]
        system = build_line_system(BoardGeometry(kind, *key))
        try:
            res = solve_max(system, time_limit=args.time_limit_per_entry,
                            threads=args.threads)
        except SolveTimeoutError as exc:
            memo[key] = f"≥{exc.lower_bound}/≤{exc.upper_bound}"
            return memo[key]
        memo[key] = res.T
        cache_put(cache, kind, key[0], key[1], {"T": res.T})
        return res.T

    grid = [[cell(m, n) for n in cols] for m in rows]
    if args.cache:
        cache.save()

    if args.format == "json":
        doc = {"kind": kind, "rows": list(rows), "cols": list(cols), "values": grid}
        print(json.dumps(doc, sort_keys=True, separators=(",", ":")))
        return 0
    if args.format == "csv":
        print("," + ",".join(str(n) for n in cols))
        for m, row in zip(rows, grid):
            print(f"{m}," + ",".join(str(v) for v in row))
        return 0
    width = max([len(str(v)) for row in grid for v in row]
                + [len(str(n)) for n in cols] + [3])
    head = " " * 5 + " ".join(f"{n:>{width}}" for n in cols)
    print(f"maximum placement sizes, {kind} boards (rows m, columns n)")
    print(head)
    for m, row in zip(rows, grid):
        print(f"{m:>4} " + " ".join(f"{str(v):>{width}}" for v in row))
    return 0


def _cmd_emit_ideal(args) -> int:
    geom = _geom(args)
    system = build_line_system(geom)
    sys.stdout.write(emit_ideal(system, args.format))
    return 0


# --------------------------------------------------------------------------
# parser

def _add_board(sub, geometry=True):
    sub.add_argument("m", type=_positive_int, help="columns")
    sub.add_argument("n", type=_positive_int, help="rows")
    if geometry:
        sub.add_argument("--geometry", choices=("torus", "lattice"), default="torus")


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="no3line",
        description="No-three-in-line computations on torus and lattice boards.")
    sp = p.add_subparsers(dest="command", required=True)

    s = sp.add_parser("lines", help="enumerate maximal lines")
    _add_board(s)
    s.add_argument("--min-size", type=_positive_int, default=3)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=_cmd_lines)

    s = sp.add_parser("check", help="check a placement for collinear triples")
    _add_board(s)
    s.add_argument("--points", required=True, help="semicolon-separated x,y pairs")
    s.set_defaults(func=_cmd_check)

    s = sp.add_parser("construct", help="build a known maximum placement")
    s.add_argument("name", choices=sorted(_CONSTRUCTIONS))
    s.add_argument("-p", type=_positive_int, required=True)
    s.add_argument("-q", type=_positive_int)
    s.add_argument("--verify", action="store_true")
    s.set_defaults(func=_cmd_construct)

    s = sp.add_parser("solve", help="exact maximum placement size")
    _add_board(s)
    s.add_argument("--count-all", action="store_true",
                   help="also count maximum placements")
    s.add_argument("--threads", type=_positive_int, default=1)
    s.add_argument("--time-limit", type=float, default=None, metavar="SECONDS")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=_cmd_solve)

    s = sp.add_parser("profile", help="count valid placements of every size")
    _add_board(s)
    s.add_argument("--naive", action="store_true",
                   help="use the slow reference enumeration")
    s.add_argument("--limit", type=_positive_int, default=49,
                   help="largest allowed point count")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=_cmd_profile)

    s = sp.add_parser("table", help="tabulate maxima over a board range")
    s.add_argument("--rows", default="2..7", help="m range, A..B")
    s.add_argument("--cols", default="2..19", help="n range, A..B")
    s.add_argument("--geometry", choices=("torus", "lattice"), default="torus")
    s.add_argument("--format", choices=("ascii", "csv", "json"), default="ascii")
    s.add_argument("--cache", default=None, metavar="FILE")
    s.add_argument("--threads", type=_positive_int, default=1)
    s.add_argument("--time-limit-per-entry", type=float, default=120.0,
                   metavar="SECONDS")
    s.set_defaults(func=_cmd_table)

    s = sp.add_parser("emit-ideal", help="print the constraint ideal as a CAS script")
    _add_board(s)
    s.add_argument("--format", choices=IDEAL_FORMATS, default="macaulay2")
    s.set_defaults(func=_cmd_emit_ideal)

    return p


def run(argv) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except SolveTimeoutError as exc:
        print(f"timeout: {exc} (proven {exc.lower_bound} <= T <= {exc.upper_bound})",
              file=sys.stderr)
        return 3
    except (InvalidInputError, UnsupportedGeometryError, UnknownFormatError,
            BoardTooLargeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2
    except No3LineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
