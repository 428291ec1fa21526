"""Constraint systems: collinear triples, pair exclusion maps, ideal scripts.

A placement avoids three-in-line iff it contains no constraint triple, i.e.
no 3-subset of any line.  The same data has a polynomial reading: over GF(2),
the quotient by the ideal generated by all x_i^2 and all triple monomials
x_i x_j x_k has the valid placements as its monomial basis, so its Hilbert
function is the placement-count profile.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Mapping

from .errors import UnknownFormatError
from .geometry import BoardGeometry, LineSet, enumerate_lines

IDEAL_FORMATS = ("macaulay2", "singular", "cocoa", "json")


@dataclass(frozen=True, eq=False)
class LineSystem:
    """The full no-three-in-line constraint system of one board.

    ``triples`` lists every collinear 3-subset as a sorted tuple of flat
    indices; ``pair_exclusion`` maps each covered pair (i, j), i < j, to the
    set of indices completing it to a collinear triple.  Pairs on no common
    line do not appear.
    """

    geometry: BoardGeometry
    lines: LineSet
    triples: tuple[tuple[int, int, int], ...]
    pair_exclusion: Mapping[tuple[int, int], frozenset]


@lru_cache(maxsize=None)
def build_line_system(geom: BoardGeometry) -> LineSystem:
    lines = enumerate_lines(geom, 3)
    triples = set()
    for ln in lines:
        idx = sorted(geom.index(p) for p in ln.points)
        triples.update(combinations(idx, 3))
    pair_excl: dict[tuple[int, int], set] = {}
    for i, j, k in triples:
        pair_excl.setdefault((i, j), set()).add(k)
        pair_excl.setdefault((i, k), set()).add(j)
        pair_excl.setdefault((j, k), set()).add(i)
    frozen = {pair: frozenset(s) for pair, s in pair_excl.items()}
    return LineSystem(geom, lines, tuple(sorted(triples)), frozen)


# --------------------------------------------------------------------------
# ideal emission
#
# Variables are 1-indexed: point (x, y) becomes x_(i, j) with i = x + 1 the
# column and j = y + 1 the row, listed column-major.  Generators are the
# cubic monomials of the constraint triples (sorted) followed by the squares
# of all variables.

def _cubic_index_triples(system: LineSystem) -> list[tuple[int, int, int]]:
    return sorted(system.triples)


def _ij(geom: BoardGeometry, flat: int) -> tuple[int, int]:
    p = geom.point(flat)
    return p.x + 1, p.y + 1


def _emit_json(system: LineSystem) -> str:
    geom = system.geometry
    cubics = []
    for a, b, c in _cubic_index_triples(system):
        (i1, j1), (i2, j2), (i3, j3) = _ij(geom, a), _ij(geom, b), _ij(geom, c)
        cubics.append([i1, j1, i2, j2, i3, j3])
    doc = {"kind": geom.kind, "m": geom.m, "n": geom.n, "cubics": cubics}
    return json.dumps(doc, sort_keys=True) + "\n"


def _script(system: LineSystem, comment: str, var, ring_line: str,
            ideal_open: str, sep: str, ideal_close: str, tail: list[str],
            square: str) -> str:
    geom = system.geometry
    gens = []
    for a, b, c in _cubic_index_triples(system):
        gens.append("*".join(var(*_ij(geom, f)) for f in (a, b, c)))
    for flat in range(geom.size):
        gens.append(square.format(v=var(*_ij(geom, flat))))
    out = [
        f"{comment} no-three-in-line ideal of the {geom.kind} {geom.m}x{geom.n} board over GF(2)",
        f"{comment} variables are 1-indexed: i = column in 1..{geom.m}, j = row in 1..{geom.n}",
        ring_line,
        ideal_open,
    ]
    body = (sep + "\n").join("  " + g for g in gens)
    out.append(body)
    out.append(ideal_close)
    out.extend(tail)
    return "\n".join(out) + "\n"


def emit_ideal(system: LineSystem, format: str = "macaulay2") -> str:
    """Render the constraint ideal as a computer-algebra script.

    The script defines the GF(2) quotient ring and asks for its Hilbert
    series, whose coefficients are the placement counts by size.
    """
    fmt = format.lower()
    geom = system.geometry
    m, n = geom.m, geom.n
    if fmt == "json":
        return _emit_json(system)
    if fmt == "macaulay2":
        return _script(
            system,
            comment="--",
            var=lambda i, j: f"x_({i},{j})",
            ring_line=f"R = ZZ/2[x_(1,1)..x_({m},{n})];",
            ideal_open="I = ideal(",
            sep=",",
            ideal_close=");",
            tail=["S = R/I;", "hilbertSeries(S, Reduce => true)"],
            square="{v}^2",
        )
    if fmt == "singular":
        return _script(
            system,
            comment="//",
            var=lambda i, j: f"x({i})({j})",
            ring_line=f"ring R = 2, (x(1..{m})(1..{n})), dp;",
            ideal_open="ideal I =",
            sep=",",
            ideal_close=";",
            tail=["hilb(std(I));"],
            square="{v}^2",
        )
    if fmt == "cocoa":
        return _script(
            system,
            comment="--",
            var=lambda i, j: f"x[{i},{j}]",
            ring_line=f"use R ::= ZZ/(2)[x[1..{m},1..{n}]];",
            ideal_open="I := ideal(",
            sep=",",
            ideal_close=");",
            tail=["HilbertSeries(R/I);"],
            square="{v}^2",
        )
    raise UnknownFormatError(
        f"unknown ideal format {format!r}; expected one of {', '.join(IDEAL_FORMATS)}"
    )
