"""Shared test utilities: constructors, brute-force oracles, random data.

The oracles here re-derive answers by deliberately different routes than the
library (edge-segment intersections instead of halfplane clipping, exhaustive
direction scans instead of pruned ring searches) so the two can check each
other.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from itertools import combinations

from deltafree import Point, Polygon, contains_point, convex_hull, point

F = Fraction


def P(*pts) -> Polygon:
    """Convex hull of the given points; asserts the result is nonempty."""
    poly = convex_hull(pts)
    assert poly is not None
    return poly


UNIT_SQUARE = P((0, 0), (1, 0), (1, 1), (0, 1))
UNIT_TRIANGLE = P((0, 0), (1, 0), (0, 1))


def square(n) -> Polygon:
    return P((0, 0), (n, 0), (n, n), (0, n))


# --------------------------------------------------------------------------
# Brute-force oracles
# --------------------------------------------------------------------------


def primitive_dirs(bound: int):
    """Normalized primitive integer directions with sup-norm <= bound."""
    out = []
    for a in range(0, bound + 1):
        for b in range(-bound, bound + 1):
            if (a, b) == (0, 0) or math.gcd(a, b) != 1:
                continue
            if a == 0 and b < 0:
                continue
            out.append((a, b))
    return out


def brute_width_value(p: Polygon, bound: int = 12) -> Fraction:
    """Minimum width over every primitive direction with entries <= bound."""
    best = None
    for a, b in primitive_dirs(bound):
        vals = [a * v.x + b * v.y for v in p.vertices]
        w = max(vals) - min(vals)
        if best is None or w < best:
            best = w
    assert best is not None
    return best


def _line_edge_ts(w: Point, v: Point, u1: Point, u2: Point) -> list[Fraction]:
    """Parameters t where the line w + t*v meets the closed segment [u1, u2]."""
    e = u2 - u1
    denom = v.cross(e)
    rhs = u1 - w
    if denom == 0:
        # Parallel: either disjoint or collinear, in which case the endpoints
        # of the segment bound the overlap.
        if v.cross(rhs) != 0:
            return []
        ts = []
        for u in (u1, u2):
            d = u - w
            t = d.x / v.x if v.x != 0 else d.y / v.y
            ts.append(t)
        return ts
    # w + t v = u1 + s e  =>  t v - s e = rhs; cross with e and with v.
    s = rhs.cross(v) / denom
    if not (0 <= s <= 1):
        return []
    return [rhs.cross(e) / denom]


def brute_chord_length(p: Polygon, v: tuple[int, int], w: Point) -> Fraction | None:
    """Lattice-unit length of the chord of ``p`` along ``v`` through ``w``.

    Independent of the library: intersects the full line with every closed
    edge segment and takes the parameter spread.
    """
    if not contains_point(p, w):
        return None
    vp = point(v[0], v[1])
    vs = p.vertices
    n = len(vs)
    ts: list[Fraction] = []
    if n == 1:
        ts = [F(0)]
    elif n == 2:
        ts = _line_edge_ts(w, vp, vs[0], vs[1])
    else:
        for i in range(n):
            ts.extend(_line_edge_ts(w, vp, vs[i], vs[(i + 1) % n]))
    if not ts:
        return None
    return max(ts) - min(ts)


def brute_ratdiam_value(p: Polygon, bound: int = 8) -> Fraction:
    """Longest lattice-unit chord over directions with entries <= bound."""
    best = F(0)
    for v in primitive_dirs(bound):
        for w in p.vertices:
            length = brute_chord_length(p, v, w)
            if length is not None and length > best:
                best = length
    return best


def brute_unimodular_triangles(lattice_pts) -> list[tuple]:
    """All unimodular triples among the given lattice points, as sorted tuples."""
    out = []
    for a, b, c in combinations(sorted(lattice_pts), 3):
        det = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        if det in (1, -1):
            out.append((a, b, c))
    return out


# --------------------------------------------------------------------------
# Seeded random data
# --------------------------------------------------------------------------


def rand_fraction(rng: random.Random, max_abs: int = 3, max_den: int = 4) -> Fraction:
    den = rng.randint(1, max_den)
    num = rng.randint(-max_abs * den, max_abs * den)
    return F(num, den)


def rand_point(rng: random.Random, max_abs: int = 3, max_den: int = 4) -> Point:
    return Point(rand_fraction(rng, max_abs, max_den), rand_fraction(rng, max_abs, max_den))


def rand_polygon(rng: random.Random, n_points: int = 6, max_abs: int = 3,
                 max_den: int = 4, min_dim: int = 2) -> Polygon:
    """Random convex polygon of dimension >= min_dim (retries until found)."""
    from deltafree import dimension

    while True:
        pts = [rand_point(rng, max_abs, max_den) for _ in range(n_points)]
        poly = convex_hull(pts)
        if poly is not None and dimension(poly) >= min_dim:
            return poly


def rand_nonintegral_fraction(rng: random.Random, max_abs: int = 5) -> Fraction:
    """A rational p/q with 2 <= q <= 12, q not dividing p, |p/q| <= max_abs."""
    while True:
        q = rng.randint(2, 12)
        p = rng.randint(-max_abs * q, max_abs * q)
        if p % q != 0:
            return F(p, q)
