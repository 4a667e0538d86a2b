"""Exact rational planar convex geometry.

All coordinates are :class:`fractions.Fraction` and every operation is exact;
floats are rejected at the boundary.  Convex polygons are kept in a canonical
form so that equal point sets compare equal:

* vertices in counter-clockwise order,
* strict convexity at every vertex (no collinear consecutive triple),
* the lexicographically smallest vertex first.

Degenerate polygons are first-class values: one vertex is a point, two
vertices are a segment.  The empty set is represented by ``None`` -- never by
a zero-vertex polygon -- and ``dimension(None) == -1``.  Functions that can
produce the empty set return ``Optional[Polygon]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal, NamedTuple, Optional, Sequence, Union

__all__ = [
    "Rat",
    "RatLike",
    "as_rat",
    "Point",
    "point",
    "HalfPlane",
    "Polygon",
    "convex_hull",
    "dimension",
    "halfplanes",
    "clip",
    "intersect",
    "minkowski_sum",
    "minkowski_difference",
    "lattice_points",
    "contains_point",
    "contains_polygon",
    "vertex_centroid",
    "doubled_area",
    "bounding_box",
    "edges",
]

Rat = Fraction
RatLike = Union[Fraction, int, str]


def as_rat(value: RatLike) -> Fraction:
    """Coerce an int, Fraction or string (``"-4/3"``, ``"0.21"``) to Fraction.

    Floats are rejected: binary floats silently misrepresent decimal inputs,
    and exactness is the whole contract of this library.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):  # bool is an int subclass; still nonsense here
        raise TypeError(f"not an exact rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r} (floats are not accepted)")


class Point(NamedTuple):
    """A point (or vector) in the rational plane.

    Tuple ordering gives the lexicographic order used throughout for
    canonicalization and deterministic tie-breaking.
    """

    x: Fraction
    y: Fraction

    def __add__(self, other: "Point") -> "Point":  # type: ignore[override]
        return Point(self.x + other[0], self.y + other[1])

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other[0], self.y - other[1])

    def __neg__(self) -> "Point":
        return Point(-self.x, -self.y)

    def __mul__(self, k) -> "Point":  # type: ignore[override]
        return Point(self.x * k, self.y * k)

    __rmul__ = __mul__

    def dot(self, other: "Point") -> Fraction:
        return self.x * other[0] + self.y * other[1]

    def cross(self, other: "Point") -> Fraction:
        return self.x * other[1] - self.y * other[0]

    def is_lattice(self) -> bool:
        return self.x.denominator == 1 and self.y.denominator == 1


def point(x: RatLike, y: RatLike) -> Point:
    """Build a :class:`Point` from exact rational-like inputs."""
    return Point(as_rat(x), as_rat(y))


class HalfPlane(NamedTuple):
    """The closed half-plane ``{(x, y) : a*x + b*y <= c}``."""

    a: Fraction
    b: Fraction
    c: Fraction

    def value(self, p: Point) -> Fraction:
        return self.a * p.x + self.b * p.y

    def contains(self, p: Point, strict: bool = False) -> bool:
        v = self.value(p)
        return v < self.c if strict else v <= self.c


def _validate_canonical(vs: tuple[Point, ...]) -> None:
    if not vs:
        raise ValueError("a Polygon has at least one vertex; use None for the empty set")
    for v in vs:
        if not isinstance(v, Point):
            raise TypeError(f"polygon vertex is not a Point: {v!r}")
    n = len(vs)
    if n == 1:
        return
    if n == 2:
        if not vs[0] < vs[1]:
            raise ValueError("segment vertices must be distinct and in lexicographic order")
        return
    if vs[0] != min(vs):
        raise ValueError("canonical polygon must start at its lexicographically smallest vertex")
    for i in range(n):
        o, a, b = vs[i], vs[(i + 1) % n], vs[(i + 2) % n]
        if (a - o).cross(b - a) <= 0:
            raise ValueError(
                "canonical polygon must be strictly convex and counter-clockwise; "
                f"violated at vertices {i}, {i + 1}, {i + 2}"
            )


@dataclass(frozen=True)
class Polygon:
    """An immutable convex polygon in canonical form.

    Construct via :func:`convex_hull` unless the vertex tuple is already
    canonical; the constructor validates and raises ``ValueError`` otherwise.
    """

    vertices: tuple[Point, ...]

    def __post_init__(self) -> None:
        _validate_canonical(self.vertices)

    def translate(self, d: Point) -> "Polygon":
        # Translation preserves lexicographic order and orientation, so the
        # canonical form survives vertex-wise translation.
        return Polygon(tuple(v + d for v in self.vertices))

    def negate(self) -> "Polygon":
        return convex_hull([-v for v in self.vertices])  # type: ignore[return-value]

    def __repr__(self) -> str:
        pts = ", ".join(f"({v.x}, {v.y})" for v in self.vertices)
        return f"Polygon[{pts}]"


def convex_hull(points: Iterable[Point | Sequence[RatLike]]) -> Optional[Polygon]:
    """Convex hull of a finite point set, in canonical form.

    Accepts Points or ``(x, y)`` pairs of rational-like values.  Returns
    ``None`` for an empty input, a 1-vertex polygon for a single distinct
    point, a 2-vertex polygon (segment endpoints) for a collinear set.
    """
    pts = sorted({point(p[0], p[1]) for p in points})
    if not pts:
        return None
    if len(pts) == 1:
        return Polygon((pts[0],))

    def chain(seq: Sequence[Point]) -> list[Point]:
        h: list[Point] = []
        for p in seq:
            while len(h) >= 2 and (h[-1] - h[-2]).cross(p - h[-1]) <= 0:
                h.pop()
            h.append(p)
        return h

    lower = chain(pts)
    upper = chain(pts[::-1])
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2 and hull[0] > hull[1]:
        hull.reverse()
    return Polygon(tuple(hull))


def dimension(p: Optional[Polygon]) -> int:
    """-1 for the empty set, 0 for a point, 1 for a segment, 2 otherwise."""
    if p is None:
        return -1
    n = len(p.vertices)
    return 0 if n == 1 else 1 if n == 2 else 2


def edges(p: Polygon) -> list[tuple[Point, Point]]:
    """Directed edge list: cyclic for 2-dim polygons, single edge for a segment."""
    vs = p.vertices
    if len(vs) == 1:
        return []
    if len(vs) == 2:
        return [(vs[0], vs[1])]
    return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]


def halfplanes(p: Polygon) -> tuple[HalfPlane, ...]:
    """An exact H-representation of ``p`` (its point set, any dimension).

    2-dim: one half-plane per edge.  Segment: the two closed sides of its
    supporting line plus two end caps.  Point: four axis-aligned caps.
    """
    vs = p.vertices
    if len(vs) == 1:
        (v,) = vs
        one = Fraction(1)
        return (
            HalfPlane(one, Fraction(0), v.x),
            HalfPlane(-one, Fraction(0), -v.x),
            HalfPlane(Fraction(0), one, v.y),
            HalfPlane(Fraction(0), -one, -v.y),
        )
    if len(vs) == 2:
        u, v = vs
        d = v - u
        c = d.y * u.x - d.x * u.y
        return (
            HalfPlane(d.y, -d.x, c),
            HalfPlane(-d.y, d.x, -c),
            HalfPlane(d.x, d.y, d.dot(v)),
            HalfPlane(-d.x, -d.y, -d.dot(u)),
        )
    out = []
    for u, v in edges(p):
        d = v - u
        # Interior of a CCW polygon lies left of each edge: d.y*x - d.x*y <= c.
        out.append(HalfPlane(d.y, -d.x, d.y * u.x - d.x * u.y))
    return tuple(out)


def clip(p: Optional[Polygon], h: HalfPlane) -> Optional[Polygon]:
    """Intersect a polygon with a closed half-plane.

    Kept vertices plus exact edge crossings, re-canonicalized; returns ``p``
    itself when every vertex already satisfies the constraint.
    """
    if p is None:
        return None
    vs = p.vertices
    vals = [h.value(v) for v in vs]
    if all(val <= h.c for val in vals):
        return p
    kept = [v for v, val in zip(vs, vals) if val <= h.c]
    crossings: list[Point] = []
    n = len(vs)
    if n >= 2:
        for i in range(1 if n == 2 else n):
            j = (i + 1) % n
            f0, f1 = vals[i], vals[j]
            if (f0 < h.c < f1) or (f1 < h.c < f0):
                t = (h.c - f0) / (f1 - f0)
                crossings.append(vs[i] + (vs[j] - vs[i]) * t)
    return convex_hull(kept + crossings)


def intersect(p: Optional[Polygon], q: Optional[Polygon]) -> Optional[Polygon]:
    """Exact intersection of two convex polygons (any dimensions)."""
    if p is None or q is None:
        return None
    acc: Optional[Polygon] = p
    for h in halfplanes(q):
        acc = clip(acc, h)
        if acc is None:
            return None
    return acc


def minkowski_sum(p: Polygon, q: Polygon) -> Polygon:
    """Minkowski sum: hull of pairwise vertex sums (exact, canonical)."""
    return convex_hull([u + v for u in p.vertices for v in q.vertices])  # type: ignore[return-value]


def minkowski_difference(p: Polygon, s: Polygon) -> Optional[Polygon]:
    """The set of translations placing ``s`` inside ``p``.

    ``{t : s + t ⊆ p}``, computed as the intersection of the translates
    ``p - v`` over the vertices ``v`` of ``s`` (convexity makes vertex
    containment sufficient).  ``None`` when no translate fits.
    """
    acc: Optional[Polygon] = p.translate(-s.vertices[0])
    for v in s.vertices[1:]:
        acc = intersect(acc, p.translate(-v))
        if acc is None:
            return None
    return acc


def contains_point(p: Optional[Polygon], q: Point, strict: bool = False) -> bool:
    """Membership test; ``strict=True`` tests the *relative* interior.

    For a 2-dim polygon that is the topological interior; for a segment the
    open segment; for a point the point itself.
    """
    if p is None:
        return False
    vs = p.vertices
    if len(vs) == 1:
        return q == vs[0]
    if len(vs) == 2:
        u, v = vs
        d = v - u
        if d.cross(q - u) != 0:
            return False
        t_num = (q - u).dot(d)
        t_den = d.dot(d)
        if strict:
            return 0 < t_num < t_den
        return 0 <= t_num <= t_den
    return all(h.contains(q, strict=strict) for h in halfplanes(p))


def contains_polygon(p: Optional[Polygon], q: Optional[Polygon], strict: bool = False) -> bool:
    """Whether ``q ⊆ p`` (or ``q ⊂ relint(p)`` when strict); Empty ⊆ anything."""
    if q is None:
        return True
    if p is None:
        return False
    return all(contains_point(p, v, strict=strict) for v in q.vertices)


def vertex_centroid(p: Polygon) -> Point:
    """Average of the vertices: a relative-interior point of ``p``."""
    n = len(p.vertices)
    sx = sum(v.x for v in p.vertices)
    sy = sum(v.y for v in p.vertices)
    return Point(Fraction(sx, n), Fraction(sy, n))


def doubled_area(p: Optional[Polygon]) -> Fraction:
    """Twice the area (shoelace; 0 for degenerate, -1-dim treated as 0)."""
    if p is None or len(p.vertices) < 3:
        return Fraction(0)
    vs = p.vertices
    return sum((vs[i].cross(vs[(i + 1) % len(vs)]) for i in range(len(vs))), Fraction(0))


def bounding_box(p: Polygon) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """(xmin, ymin, xmax, ymax)."""
    xs = [v.x for v in p.vertices]
    ys = [v.y for v in p.vertices]
    return min(xs), min(ys), max(xs), max(ys)


Region = Literal["all", "interior", "boundary"]


def lattice_points(p: Polygon, region: Region = "all") -> list[Point]:
    """Integer points of ``p``, lexicographically sorted.

    ``"interior"`` means the relative interior (matching
    ``contains_point(..., strict=True)``); ``"boundary"`` is the complement
    within ``"all"``.
    """
    if region not in ("all", "interior", "boundary"):
        raise ValueError(f"unknown region {region!r}")
    xmin, ymin, xmax, ymax = bounding_box(p)
    x0, x1 = math.ceil(xmin), math.floor(xmax)
    y0, y1 = math.ceil(ymin), math.floor(ymax)
    dim2 = len(p.vertices) >= 3
    hps = halfplanes(p) if dim2 else ()
    out: list[Point] = []
    for ix in range(x0, x1 + 1):
        for iy in range(y0, y1 + 1):
            q = point(ix, iy)
            if dim2:
                vals = [h.value(q) for h in hps]
                if any(v > h.c for v, h in zip(vals, hps)):
                    continue
                inside = all(v < h.c for v, h in zip(vals, hps))
            else:
                if not contains_point(p, q):
                    continue
                inside = contains_point(p, q, strict=True)
            if region == "all" or (region == "interior") == inside:
                out.append(q)
    return out
