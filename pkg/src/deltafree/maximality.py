"""Inclusion-maximality of delta2-free polygons via locked facets.

A facet of a free polygon is *locked* when a unimodular triangle copy sits
inside the polygon touching that facet in a controlled way; growing the
polygon past a locked facet, however slightly, lets the copy slide into the
enlarged interior, so freeness would be lost.  A free polygon with every
facet locked is inclusion-maximal among free convex bodies.

Over "Z" the criterion is a complete characterization, so facets decide to
Locked / NotLocked and polygons to Maximal / NotMaximal.  Over "R" a found
witness proves Locked, but exhausting a finite witness search proves nothing,
so the honest outcomes are Locked / Undetermined and Maximal / Undetermined.

Facet ``i`` of a canonical polygon is the edge from vertex ``i`` to vertex
``i+1 (mod n)``.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Optional, Union

from .geometry import (
    Point,
    Polygon,
    contains_point,
    contains_polygon,
    convex_hull,
    dimension,
    intersect,
    lattice_points,
    minkowski_difference,
)
from .freeness import is_r_delta2_free, is_z_delta2_free
from .lattice import is_unimodular_delta2_copy

__all__ = [
    "LockWitness",
    "WitnessRejection",
    "FacetReport",
    "MaximalityReport",
    "facet_endpoints",
    "z_facet_locked",
    "z_inclusion_maximal",
    "r_locked_check",
    "r_locked_search",
    "r_maximal_certified",
    "REJECT_NOT_COPY",
    "REJECT_NOT_CONTAINED",
    "REJECT_FACE",
    "REJECT_OPPOSITE",
]

REJECT_NOT_COPY = "not-a-copy"
REJECT_NOT_CONTAINED = "not-contained"
REJECT_FACE = "face-not-in-relint"
REJECT_OPPOSITE = "opposite-face-test-failed"

LOCKED = "Locked"
NOT_LOCKED = "NotLocked"
UNDETERMINED = "Undetermined"


@dataclass(frozen=True)
class LockWitness:
    """A verified witness triangle locking one facet.

    ``kind`` tags the configuration: "Z-lock" (lattice witness), "R-skew"
    (two free vertices on non-parallel facets), "R-parallel" (one free vertex
    on a parallel facet, one interior) or "R-general".  The tag is
    descriptive; every witness passes the same exact acceptance test.
    """

    facet_index: int
    triangle: Polygon
    kind: str


@dataclass(frozen=True)
class WitnessRejection:
    """Why a proposed witness fails to lock a facet."""

    facet_index: int
    reason: str


@dataclass(frozen=True)
class FacetReport:
    index: int
    endpoints: tuple[Point, Point]
    status: str  # Locked | NotLocked | Undetermined
    witness: Optional[LockWitness]


@dataclass(frozen=True)
class MaximalityReport:
    ring: str
    verdict: str  # Maximal | NotMaximal | Undetermined
    facets: tuple[FacetReport, ...]


def facet_endpoints(p: Polygon, index: int) -> tuple[Point, Point]:
    """Endpoints of facet ``index`` (canonical edge order)."""
    if dimension(p) != 2:
        raise ValueError("facets require a 2-dimensional polygon")
    n = len(p.vertices)
    if not 0 <= index < n:
        raise ValueError(f"facet index {index} out of range (0..{n - 1})")
    return p.vertices[index], p.vertices[(index + 1) % n]


# --------------------------------------------------------------------------
# Integer locking
# --------------------------------------------------------------------------


def _require_z_free(p: Polygon) -> None:
    if dimension(p) != 2:
        raise ValueError("maximality requires a 2-dimensional polygon")
    if not is_z_delta2_free(p).free:
        raise ValueError("polygon is not Z-delta2-free")


def _z_facet_locked(
    p: Polygon, index: int, interior: list[Point]
) -> FacetReport:
    a, b = facet_endpoints(p, index)
    seg = convex_hull([a, b])
    facet_pts = lattice_points(seg, "interior")  # type: ignore[arg-type]
    on_facet = set(facet_pts)
    candidates = sorted(on_facet | set(interior))
    for trip in combinations(candidates, 3):
        if not any(v in on_facet for v in trip):
            continue
        d1 = trip[1] - trip[0]
        d2 = trip[2] - trip[0]
        if abs(d1.cross(d2)) != 1:
            continue
        tri = convex_hull(trip)
        assert tri is not None
        return FacetReport(index, (a, b), LOCKED, LockWitness(index, tri, "Z-lock"))
    return FacetReport(index, (a, b), NOT_LOCKED, None)


def z_facet_locked(p: Polygon, index: int) -> FacetReport:
    """Decide whether facet ``index`` is Z-locked (complete criterion).

    A witness is a unimodular lattice triangle inside ``p`` with at least one
    vertex among the lattice points of the facet's relative interior and all
    remaining vertices strictly interior.  Exhausting those finitely many
    triangles decides NotLocked.  Preconditions: ``p`` 2-dim and Z-delta2-free.
    """
    _require_z_free(p)
    return _z_facet_locked(p, index, lattice_points(p, "interior"))


def z_inclusion_maximal(p: Polygon) -> MaximalityReport:
    """Maximal iff every facet is Z-locked; NotMaximal otherwise (complete)."""
    _require_z_free(p)
    interior = lattice_points(p, "interior")
    reports = tuple(
        _z_facet_locked(p, i, interior) for i in range(len(p.vertices))
    )
    verdict = "Maximal" if all(r.status == LOCKED for r in reports) else "NotMaximal"
    return MaximalityReport("Z", verdict, reports)


# --------------------------------------------------------------------------
# Real locking
# --------------------------------------------------------------------------


def _relint_facet_index(p: Polygon, v: Point) -> Optional[int]:
    """Index of the facet whose relative interior contains ``v``, if any."""
    n = len(p.vertices)
    for j in range(n):
        a, b = facet_endpoints(p, j)
        seg = convex_hull([a, b])
        if contains_point(seg, v, strict=True):
            return j
    return None


def _classify_kind(p: Polygon, index: int, w1: Point, w2: Point) -> str:
    a, b = facet_endpoints(p, index)
    d = b - a
    j1 = _relint_facet_index(p, w1)
    j2 = _relint_facet_index(p, w2)
    if j1 is not None and j2 is not None and j1 != j2:
        a1, b1 = facet_endpoints(p, j1)
        a2, b2 = facet_endpoints(p, j2)
        if (b1 - a1).cross(b2 - a2) != 0:
            return "R-skew"
    incident = [(j, w) for j, w in ((j1, w1), (j2, w2)) if j is not None]
    free = [w for j, w in ((j1, w1), (j2, w2)) if j is None]
    if len(incident) == 1 and len(free) == 1:
        j, _ = incident[0]
        aj, bj = facet_endpoints(p, j)
        if d.cross(bj - aj) == 0 and contains_point(p, free[0], strict=True):
            return "R-parallel"
    return "R-general"


def r_locked_check(
    p: Polygon, index: int, tri: Polygon
) -> Union[LockWitness, WitnessRejection]:
    """Exact test whether ``tri`` locks facet ``index`` over ring R.

    Checks, in order: ``tri`` is a real unimodular copy of the unit triangle;
    ``tri ⊆ p``; the face of ``tri`` on the facet's supporting line is
    nonempty and lies in the facet's relative interior; and the set of
    translations keeping the *opposite* face of ``tri`` inside ``p`` is
    2-dimensional (for a vertex opposite face this is automatic).  The last
    condition is what lets the copy slide inward once the facet is pushed out.
    """
    a, b = facet_endpoints(p, index)
    if not is_unimodular_delta2_copy(tri, "R"):
        return WitnessRejection(index, REJECT_NOT_COPY)
    if not contains_polygon(p, tri):
        return WitnessRejection(index, REJECT_NOT_CONTAINED)
    d = b - a
    on_line = [v for v in tri.vertices if d.cross(v - a) == 0]
    if not on_line:
        return WitnessRejection(index, REJECT_FACE)
    seg = convex_hull([a, b])
    if any(not contains_point(seg, v, strict=True) for v in on_line):
        return WitnessRejection(index, REJECT_FACE)
    others = [v for v in tri.vertices if d.cross(v - a) != 0]
    if len(on_line) == 2:
        # Opposite face is a single vertex; its translation set is p - v,
        # always 2-dimensional.
        return LockWitness(index, tri, "R-general")
    w1, w2 = others
    opposite = convex_hull([w1, w2])
    assert opposite is not None
    if dimension(minkowski_difference(p, opposite)) != 2:
        return WitnessRejection(index, REJECT_OPPOSITE)
    return LockWitness(index, tri, _classify_kind(p, index, w1, w2))


@lru_cache(maxsize=8)
def _anchored_shapes(bound: int) -> tuple[Polygon, ...]:
    """Anchored unimodular lattice triangles with edge-vector entries <= bound.

    Anchored: lexicographically smallest vertex at the origin.  Sorted small
    shapes first so searches find simple witnesses early.
    """
    seen: dict[tuple[Point, ...], Polygon] = {}
    rng = range(-bound, bound + 1)
    for d1x, d1y, d2x, d2y in product(rng, repeat=4):
        if abs(d1x * d2y - d1y * d2x) != 1:
            continue
        tri = convex_hull([(0, 0), (d1x, d1y), (d2x, d2y)])
        assert tri is not None
        anchored = tri.translate(-tri.vertices[0])
        seen.setdefault(anchored.vertices, anchored)

    def size(vs: tuple[Point, ...]) -> int:
        return max(max(abs(v.x), abs(v.y)) for v in vs)

    order = sorted(seen, key=lambda vs: (size(vs), vs))
    return tuple(seen[k] for k in order)


def _line_candidates(x: Polygon) -> list[Point]:
    """Deterministic sample translations along a feasible segment."""
    if len(x.vertices) == 1:
        return [x.vertices[0]]
    u, v = x.vertices[0], x.vertices[1]
    d = v - u
    return [u + d * Fraction(1, 2), u + d * Fraction(1, 4), u + d * Fraction(3, 4)]


def r_locked_search(p: Polygon, index: int, shape_bound: int = 4) -> FacetReport:
    """Search for an R-lock witness for one facet.

    For each anchored triangle shape (edge entries up to ``shape_bound``), the
    translations placing the shape inside ``p`` form a Minkowski difference;
    intersecting it with the translations putting one shape vertex on the
    facet leaves a segment, whose midpoint and quarter points are tested with
    :func:`r_locked_check`.  Finding a witness proves Locked; exhaustion only
    yields Undetermined (never NotLocked).
    """
    a, b = facet_endpoints(p, index)
    facet_segment = convex_hull([a, b])
    assert facet_segment is not None
    for shape in _anchored_shapes(shape_bound):
        room = minkowski_difference(p, shape)
        if room is None:
            continue
        for s in shape.vertices:
            on_facet = intersect(room, facet_segment.translate(-s))
            if on_facet is None:
                continue
            for t in _line_candidates(on_facet):
                result = r_locked_check(p, index, shape.translate(t))
                if isinstance(result, LockWitness):
                    return FacetReport(index, (a, b), LOCKED, result)
    return FacetReport(index, (a, b), UNDETERMINED, None)


def r_maximal_certified(
    p: Polygon, shape_bound: int = 4, threads: int = 1
) -> MaximalityReport:
    """Certify inclusion-maximality over R facet by facet.

    Verdict "Maximal" when every facet has a verified lock witness, else
    "Undetermined" (a failed search is not a disproof).  Preconditions:
    ``p`` 2-dimensional and R-delta2-free.  ``threads`` maps the per-facet
    searches over a thread pool in index order, so output is deterministic.
    """
    if dimension(p) != 2:
        raise ValueError("maximality requires a 2-dimensional polygon")
    if not is_r_delta2_free(p, threads=threads).free:
        raise ValueError("polygon is not R-delta2-free")
    indices = range(len(p.vertices))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            reports = tuple(
                pool.map(lambda i: r_locked_search(p, i, shape_bound), indices)
            )
    else:
        reports = tuple(r_locked_search(p, i, shape_bound) for i in indices)
    verdict = "Maximal" if all(r.status == LOCKED for r in reports) else UNDETERMINED
    return MaximalityReport("R", verdict, reports)
