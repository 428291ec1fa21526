"""Benchmark the JIT-compiled search kernel against the interpreted fallback.

Runs the exact solver and the placement-count profile on a few boards under
each available backend and prints per-board timings with the speedup.

    python3 benchmarks/bench_backends.py [--repeats N] [--full]
"""

import argparse
import time

from no3line import backend
from no3line.constraints import build_line_system
from no3line.geometry import BoardGeometry
from no3line.solver import profile, solve_max

SOLVE_BOARDS = [("torus", 3, 3), ("torus", 4, 4), ("torus", 2, 8), ("lattice", 4, 4)]
PROFILE_BOARDS = [("torus", 3, 3), ("torus", 2, 6)]
FULL_SOLVE_BOARDS = [("torus", 5, 5), ("lattice", 5, 5)]


def _time(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench(repeats: int, full: bool) -> None:
    solve_boards = SOLVE_BOARDS + (FULL_SOLVE_BOARDS if full else [])
    rows = []
    for task, boards, run in (
        ("solve", solve_boards, lambda s: solve_max(s, count_all=True)),
        ("profile", PROFILE_BOARDS, profile),
    ):
        for kind, m, n in boards:
            system = build_line_system(BoardGeometry(kind, m, n))
            timings = {}
            for name in backend.available():
                backend.use(name)
                try:
                    run(system)  # warm-up (JIT compile, caches)
                    timings[name] = _time(lambda: run(system), repeats)
                finally:
                    backend.use(None)
            rows.append((task, f"{kind} {m}x{n}", timings))

    width = max(len(label) for _, label, _ in rows)
    names = backend.available()
    header = f"{'task':8} {'board':{width}} " + " ".join(f"{b:>12}" for b in names)
    print(header + ("      speedup" if len(names) == 2 else ""))
    print("-" * len(header) + ("-" * 13 if len(names) == 2 else ""))
    for task, label, t in rows:
        cells = " ".join(f"{t[b] * 1e3:10.2f}ms" for b in names)
        line = f"{task:8} {label:{width}} {cells}"
        if len(names) == 2:
            line += f" {t['python'] / t['numba']:11.1f}x"
        print(line)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=3,
                    help="timing repetitions per cell (best is kept)")
    ap.add_argument("--full", action="store_true",
                    help="add slower boards that stress the fallback")
    args = ap.parse_args()
    print(f"backends: {', '.join(backend.available())}")
    bench(args.repeats, args.full)


if __name__ == "__main__":
    main()
