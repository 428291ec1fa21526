"""Explicit maximum placements for special board families.

Each builder returns a torus placement that has been verified collinear-free
by the checker; a failed verification means the construction code is wrong
and raises immediately.  ``predicted_value`` records the board families with
a known maximum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .checker import check_collinear_free
from .errors import InvalidInputError, No3LineError
from .geometry import Placement, torus


@dataclass(frozen=True)
class KnownValue:
    m: int
    n: int
    value: int
    family: str


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _require_prime(p: int, name: str = "p") -> None:
    if not is_prime(p):
        raise InvalidInputError(f"{name} must be prime, got {p}")


def _verified(placement: Placement, label: str) -> Placement:
    res = check_collinear_free(placement.geometry, placement)
    if not res.ok:
        triple = res.witness[0]
        raise No3LineError(
            f"construction {label} produced a collinear triple "
            f"{tuple(triple[0])}, {tuple(triple[1])}, {tuple(triple[2])}"
        )
    return placement


def parabola(p: int) -> Placement:
    """p points (x, x^2) on the p x p torus: no three collinear."""
    _require_prime(p)
    geom = torus(p, p)
    pts = [(x, (x * x) % p) for x in range(p)]
    return _verified(Placement.of(geom, pts), f"parabola({p})")


def prime_square(p: int) -> Placement:
    """2p points on the p x p^2 torus from two shifted parabola branches."""
    _require_prime(p)
    geom = torus(p, p * p)
    pts = []
    for x in range(p):
        pts.append((x, (p * x * x) % (p * p)))
        pts.append((p - x - 1, (-p * x * x - 1) % (p * p)))
    return _verified(Placement.of(geom, pts), f"prime_square({p})")


def _least_nonresidue(p: int) -> int:
    for q in range(2, p):
        if pow(q, (p - 1) // 2, p) == p - 1:
            return q
    raise No3LineError(f"no quadratic nonresidue below {p}")


def conic(p: int) -> Placement:
    """p + 1 points of the conic x^2 - q y^2 = 1 on the p x p torus (odd p).

    q is the least quadratic nonresidue mod p, making the conic
    non-degenerate with exactly p + 1 rational points.  For p = 2 the conic
    degenerates; a maximal 3-point placement is returned instead.
    """
    _require_prime(p)
    geom = torus(p, p)
    if p == 2:
        pts = [(0, 0), (0, 1), (1, 0)]
    else:
        q = _least_nonresidue(p)
        pts = [
            (x, y)
            for x in range(p)
            for y in range(p)
            if (x * x - q * y * y) % p == 1
        ]
    return _verified(Placement.of(geom, pts), f"conic({p})")


def prime_pq(p: int, q: int) -> Placement:
    """p + 1 points on the p x pq torus for distinct odd primes p, q.

    Every line of this torus projects, via (a, y) -> (a, y mod p), onto a
    line of the p x p torus (fibers of the projection are lines too), so a
    placement is collinear-free exactly when its projections are distinct
    and collinear-free mod p.  The conic a^2 - c u^2 = 1 (c the least
    quadratic nonresidue mod p) supplies p + 1 such projections; taking
    the half-arc X with u in [0, (p-1)/2] together with its half-turn
    image -X lifts it to the full torus.  The two halves are disjoint and
    the checker re-establishes validity on every call.
    """
    _require_prime(p)
    _require_prime(q, "q")
    if p == 2 or q == 2:
        raise InvalidInputError("p and q must be odd primes")
    if p == q:
        raise InvalidInputError("p and q must be distinct")
    geom = torus(p, p * q)
    c = _least_nonresidue(p)
    half = [
        (a, u)
        for u in range((p - 1) // 2 + 1)
        for a in range(p)
        if (a * a - c * u * u) % p == 1 and (u > 0 or a == 1)
    ]
    pts = [(a, u) for a, u in half]
    pts += [((-a) % p, (-u) % (p * q)) for a, u in half]
    return _verified(Placement.of(geom, pts), f"prime_pq({p},{q})")


def predicted_value(m: int, n: int) -> Optional[KnownValue]:
    """The known maximum for (m, n) when the board is in a solved family."""
    if m < 1 or n < 1:
        raise InvalidInputError("board dimensions must be positive")
    a, b = min(m, n), max(m, n)
    if math.gcd(a, b) == 1 and a * b >= 2:
        return KnownValue(m, n, 2, "cyclic_coprime")
    if a == 2 and b % 2 == 0:
        return KnownValue(m, n, 4, "two_by_even")
    if a == b and a % 2 == 1 and is_prime(a):
        return KnownValue(m, n, a + 1, "p_by_p")
    if b == a * a and is_prime(a):
        return KnownValue(m, n, 2 * a, "p_by_p2")
    if a % 2 == 1 and is_prime(a) and b % a == 0:
        q = b // a
        if q != a and q % 2 == 1 and is_prime(q):
            return KnownValue(m, n, a + 1, "p_by_pq")
    return None
