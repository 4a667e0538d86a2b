"""Lattice functionals of rational convex polygons.

Exact lattice width (with a certified optimal integer direction), longest
rational lattice-direction chord ("rational diameter"), and affine unimodular
maps / copy detection / equivalence search over the integer lattice.

Directions are primitive integer vectors, sign-normalized so that the first
nonzero coordinate is positive.  All searches are finite-window enumerations
with exact pruning bounds, so results are deterministic and certified optimal
(no floating point, no heuristics).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Literal, NamedTuple, Optional

from .geometry import (
    Point,
    Polygon,
    as_rat,
    bounding_box,
    convex_hull,
    dimension,
    doubled_area,
    halfplanes,
    point,
)

__all__ = [
    "Ring",
    "as_ring",
    "width_along",
    "WidthResult",
    "lattice_width",
    "ChordResult",
    "rational_diameter",
    "UnimodularMap",
    "apply_map",
    "is_unimodular_delta2_copy",
    "unimodular_equivalent",
    "primitive_direction",
]

Ring = Literal["Z", "R"]


def as_ring(value: str) -> Ring:
    """Normalize a ring tag: integer translations ("Z") or real ("R")."""
    v = value.strip().upper()
    if v in ("Z", "R"):
        return v  # type: ignore[return-value]
    raise ValueError(f"unknown ring {value!r}; expected 'Z' or 'R'")


def _normalize_dir(a: int, b: int) -> tuple[int, int]:
    """Pick one representative of {u, -u}: first nonzero coordinate positive."""
    if a < 0 or (a == 0 and b < 0):
        return -a, -b
    return a, b


def _dir_key(d: tuple[int, int]) -> tuple[int, int, int]:
    """Deterministic tie-break among equally good normalized directions."""
    a, b = d
    return (abs(a) + abs(b), abs(b), b)


def primitive_direction(d: Point) -> tuple[int, int]:
    """The primitive integer vector spanning the same line as rational ``d``.

    Sign-normalized (first nonzero coordinate positive).
    """
    if d.x == 0 and d.y == 0:
        raise ValueError("zero vector has no direction")
    scale = math.lcm(d.x.denominator, d.y.denominator)
    a, b = int(d.x * scale), int(d.y * scale)
    g = math.gcd(a, b)
    return _normalize_dir(a // g, b // g)


def width_along(p: Polygon, u: tuple[int, int] | Point) -> Fraction:
    """Width of ``p`` along the linear functional ``u``: max - min of u.x over p."""
    a, b = u[0], u[1]
    vals = [a * v.x + b * v.y for v in p.vertices]
    return max(vals) - min(vals)


class WidthResult(NamedTuple):
    width: Fraction
    direction: tuple[int, int]


def lattice_width(p: Polygon) -> WidthResult:
    """Exact lattice width and an optimal primitive integer direction.

    The search enumerates normalized primitive directions in growing
    sup-norm rings; a pair of linearly independent vertex differences gives
    the exact cutoff ``max(|a|,|b|) <= W * (|e|_1 + |f|_1) / |det(e,f)|``
    beyond which no direction can beat the best width ``W`` found so far.
    Ties are broken by (|a|+|b|, |b|, b), so e.g. the unit square reports
    direction (1, 0).
    """
    dim = dimension(p)
    if dim <= 0:
        return WidthResult(Fraction(0), (1, 0))
    vs = p.vertices
    if dim == 1:
        d = vs[1] - vs[0]
        a, b = primitive_direction(d)
        return WidthResult(Fraction(0), _normalize_dir(b, -a))

    # Tightest available enumeration bound from a vertex-difference basis.
    base = vs[0]
    diffs = [v - base for v in vs[1:]]
    best_factor: Optional[Fraction] = None
    for i in range(len(diffs)):
        for j in range(i + 1, len(diffs)):
            det = diffs[i].cross(diffs[j])
            if det == 0:
                continue
            l1 = abs(diffs[i].x) + abs(diffs[i].y) + abs(diffs[j].x) + abs(diffs[j].y)
            factor = l1 / abs(det)
            if best_factor is None or factor < best_factor:
                best_factor = factor
    assert best_factor is not None  # dim == 2 guarantees an independent pair

    best: Optional[tuple[Fraction, tuple[int, int, int], tuple[int, int]]] = None
    r = 0
    while True:
        r += 1
        if best is not None and r > best[0] * best_factor:
            break
        for a, b in _ring(r):
            if math.gcd(a, b) != 1:
                continue
            w = width_along(p, (a, b))
            key = (w, *_dir_key((a, b)))
            if best is None or key < (best[0], *best[1]):
                best = (w, _dir_key((a, b)), (a, b))
    assert best is not None
    return WidthResult(best[0], best[2])


def _ring(r: int):
    """Normalized integer vectors with sup-norm exactly r, lexicographic order."""
    out = []
    for a in range(0, r + 1):
        for b in range(-r, r + 1):
            if max(abs(a), abs(b)) != r:
                continue
            if (a, b) != _normalize_dir(a, b):
                continue
            out.append((a, b))
    return sorted(out)


class ChordResult(NamedTuple):
    length: Fraction
    direction: tuple[int, int]
    anchor: Point


def rational_diameter(p: Polygon) -> ChordResult:
    """Longest chord of ``p`` in lattice-length units.

    Over primitive integer directions ``v``, the longest segment
    ``[anchor, anchor + t*v] ⊆ p`` measured in steps of ``v`` (so a chord of
    Euclidean length ``t*|v|`` counts as ``t``).  The optimum is attained on a
    line through a vertex, and directions are pruned by
    ``t * |v|_2 <= euclidean-diameter``.  Returns length, the optimal
    normalized direction, and the chord's starting point.
    """
    dim = dimension(p)
    vs = p.vertices
    if dim <= 0:
        return ChordResult(Fraction(0), (1, 0), vs[0])
    if dim == 1:
        d = vs[1] - vs[0]
        a, b = primitive_direction(d)
        t = d.x / a if a != 0 else d.y / b
        return ChordResult(abs(t), (a, b), vs[0])

    hps = halfplanes(p)

    def max_chord(v: tuple[int, int]) -> Optional[tuple[Fraction, Point]]:
        best_len: Optional[Fraction] = None
        best_anchor: Optional[Point] = None
        for w in vs:
            tlo: Optional[Fraction] = None
            thi: Optional[Fraction] = None
            ok = True
            for h in hps:
                s = h.a * v[0] + h.b * v[1]
                f0 = h.value(w)
                if s == 0:
                    if f0 > h.c:
                        ok = False
                        break
                    continue
                t = (h.c - f0) / s
                if s > 0:
                    thi = t if thi is None else min(thi, t)
                else:
                    tlo = t if tlo is None else max(tlo, t)
            if not ok or tlo is None or thi is None or tlo > thi:
                continue
            length = thi - tlo
            if best_len is None or length > best_len:
                best_len = length
                best_anchor = w + Point(as_rat(v[0]), as_rat(v[1])) * tlo
        if best_len is None:
            return None
        return best_len, best_anchor  # type: ignore[return-value]

    d2_max = max((a - b).dot(a - b) for a in vs for b in vs)

    # Seed with the axes and all vertex-difference directions so that thin
    # polygons do not force a huge enumeration radius.
    seeds = {(1, 0), (0, 1)}
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            seeds.add(primitive_direction(vs[j] - vs[i]))

    best: Optional[tuple[Fraction, tuple[int, int, int], tuple[int, int], Point]] = None

    def consider(v: tuple[int, int]) -> None:
        nonlocal best
        res = max_chord(v)
        if res is None:
            return
        length, anchor = res
        key = _dir_key(v)
        if best is None or length > best[0] or (length == best[0] and key < best[1]):
            best = (length, key, v, anchor)

    for v in sorted(seeds, key=_dir_key):
        consider(v)
    assert best is not None and best[0] > 0

    r = 0
    while True:
        r += 1
        # Every vector in ring r has squared euclidean norm >= r^2.
        if r * r * best[0] * best[0] > d2_max:
            break
        for a, b in _ring(r):
            if math.gcd(a, b) != 1:
                continue
            if (a * a + b * b) * best[0] * best[0] > d2_max:
                continue
            consider((a, b))
    return ChordResult(best[0], best[2], best[3])


@dataclass(frozen=True)
class UnimodularMap:
    """An affine lattice-preserving map ``x -> M x + t`` with ``|det M| = 1``.

    ``ring`` "Z" requires an integer translation ``t``; "R" allows any
    rational one.
    """

    m11: int
    m12: int
    m21: int
    m22: int
    t: Point
    ring: Ring = "Z"

    def __post_init__(self) -> None:
        if abs(self.det) != 1:
            raise ValueError("matrix must be unimodular (determinant +-1)")
        if self.ring == "Z" and not self.t.is_lattice():
            raise ValueError("ring Z requires an integer translation")

    @property
    def det(self) -> int:
        return self.m11 * self.m22 - self.m12 * self.m21

    def apply(self, q: Point) -> Point:
        return Point(
            self.m11 * q.x + self.m12 * q.y + self.t.x,
            self.m21 * q.x + self.m22 * q.y + self.t.y,
        )


def apply_map(m: UnimodularMap, p: Polygon) -> Polygon:
    """Image of a polygon (re-canonicalized: reflections flip orientation)."""
    return convex_hull([m.apply(v) for v in p.vertices])  # type: ignore[return-value]


def is_unimodular_delta2_copy(tri: Optional[Polygon], ring: Ring) -> bool:
    """Whether ``tri`` is a unimodular image of conv{0, e1, e2} over ``ring``.

    Equivalently: three vertices whose edge vectors are integral with
    determinant +-1; over "Z" the vertices must in addition be lattice points.
    """
    as_ring(ring)
    if tri is None or len(tri.vertices) != 3:
        return False
    v0, v1, v2 = tri.vertices
    d1, d2 = v1 - v0, v2 - v0
    if not (d1.is_lattice() and d2.is_lattice()):
        return False
    if abs(d1.cross(d2)) != 1:
        return False
    if ring == "Z" and not v0.is_lattice():
        return False
    return True


def _unimodular_matrices(radius: int):
    """Unimodular integer 2x2 matrices, by growing max-entry, lexicographic."""
    for m in range(0, radius + 1):
        ring_entries = []
        for entries in product(range(-m, m + 1), repeat=4):
            if max(abs(e) for e in entries) != m:
                continue
            m11, m12, m21, m22 = entries
            if abs(m11 * m22 - m12 * m21) == 1:
                ring_entries.append(entries)
        yield from sorted(ring_entries)


def unimodular_equivalent(
    p: Polygon, q: Polygon, ring: Ring, radius: int = 8
) -> Optional[UnimodularMap]:
    """Search for an affine unimodular map with ``M p + t == q``.

    Enumerates matrices by growing max entry up to ``radius``; the translation
    is forced by matching lexicographically smallest vertices, and over "Z"
    must be integral.  Returns ``None`` if no map in the window works (which
    does not by itself prove inequivalence).
    """
    ring = as_ring(ring)
    if len(p.vertices) != len(q.vertices):
        return None
    if doubled_area(p) != doubled_area(q):
        return None
    if dimension(p) == 2 and lattice_width(p).width != lattice_width(q).width:
        return None
    for m11, m12, m21, m22 in _unimodular_matrices(radius):
        mapped = convex_hull(
            [Point(m11 * v.x + m12 * v.y, m21 * v.x + m22 * v.y) for v in p.vertices]
        )
        assert mapped is not None
        t = q.vertices[0] - mapped.vertices[0]
        if ring == "Z" and not t.is_lattice():
            continue
        if mapped.translate(t).vertices == q.vertices:
            return UnimodularMap(m11, m12, m21, m22, t, ring)
    return None
