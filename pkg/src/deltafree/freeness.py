"""Deciding whether a polygon harbours a unimodular triangle in its interior.

The reference body is the half-open unit triangle conv{0, e1, e2} (written
"delta2" in identifiers); a *copy* is its image under an affine unimodular
map, with integer translations over ring "Z" and arbitrary rational ones over
ring "R".  A polygon is Z-/R-delta2-free when no copy lies in its interior.

Over "Z" freeness reduces to collinearity of the interior lattice points.
Over "R" every real placement is a real translate of a lattice copy living in
``p + [-1, 0]^2``, so the decision enumerates translation classes of such
lattice triangles and measures the dimension of each class's set of feasible
translations (a Minkowski difference).  Both routes are exact.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

from .geometry import (
    Point,
    Polygon,
    convex_hull,
    dimension,
    lattice_points,
    minkowski_difference,
    minkowski_sum,
    vertex_centroid,
)
from .lattice import Ring, as_ring

__all__ = [
    "FreenessVerdict",
    "enum_unimodular_triangles",
    "translation_classes",
    "is_z_delta2_free",
    "is_r_delta2_free",
    "contains_copy",
    "interior_translate_exists",
]

# Translating the lattice anchor of a real copy into p requires looking one
# lattice step down-left of p; this square is the Minkowski summand doing it.
_UNIT_SQUARE_NEG = convex_hull([(0, 0), (-1, 0), (0, -1), (-1, -1)])


@dataclass(frozen=True)
class FreenessVerdict:
    """Outcome of a freeness decision.

    ``violation`` is a concrete copy contained in the polygon's interior when
    ``free`` is False (lattice triangle over "Z"; rational translate of one
    over "R"), and ``None`` otherwise.
    """

    ring: Ring
    free: bool
    violation: Optional[Polygon]


def _int_points(pts: list[Point]) -> list[tuple[int, int]]:
    return [(int(q.x), int(q.y)) for q in pts]


def _unimodular_triples(pts: list[tuple[int, int]]):
    """Lex-ordered triples of lattice points spanning a unimodular triangle."""
    n = len(pts)
    for i in range(n):
        xi, yi = pts[i]
        for j in range(i + 1, n):
            dx1 = pts[j][0] - xi
            dy1 = pts[j][1] - yi
            for k in range(j + 1, n):
                det = dx1 * (pts[k][1] - yi) - dy1 * (pts[k][0] - xi)
                if det == 1 or det == -1:
                    yield pts[i], pts[j], pts[k]


def enum_unimodular_triangles(p: Polygon) -> list[Polygon]:
    """All unimodular lattice triangles with vertices in ``p`` (canonical, sorted)."""
    pts = _int_points(lattice_points(p, "all"))
    out = [convex_hull(t) for t in _unimodular_triples(pts)]
    out.sort(key=lambda tri: tri.vertices)  # type: ignore[union-attr]
    return out  # type: ignore[return-value]


def _triangle_classes(p: Polygon) -> list[Polygon]:
    """Translation classes of unimodular lattice triangles in ``p + [-1,0]^2``.

    Class representatives are anchored: translated so the lexicographically
    smallest vertex is the origin.  Sorted by vertex tuple.
    """
    region = minkowski_sum(p, _UNIT_SQUARE_NEG)  # type: ignore[arg-type]
    pts = _int_points(lattice_points(region, "all"))
    seen: dict[tuple[tuple[int, int], ...], tuple[tuple[int, int], ...]] = {}
    for trip in _unimodular_triples(pts):
        ordered = sorted(trip)
        ax, ay = ordered[0]
        key = tuple((x - ax, y - ay) for x, y in ordered)
        if key not in seen:
            seen[key] = key
    reps = [convex_hull(key) for key in seen]
    reps.sort(key=lambda tri: tri.vertices)  # type: ignore[union-attr]
    return reps  # type: ignore[return-value]


def _classes_with_room(
    p: Polygon, threads: int = 1
) -> list[tuple[Polygon, Polygon]]:
    """(representative, feasible-translation set) pairs with nonempty room."""
    reps = _triangle_classes(p)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            mds = list(pool.map(lambda s: minkowski_difference(p, s), reps))
    else:
        mds = [minkowski_difference(p, s) for s in reps]
    return [(s, md) for s, md in zip(reps, mds) if md is not None]


def translation_classes(p: Polygon, threads: int = 1) -> list[Polygon]:
    """Anchored lattice-triangle classes with at least one real placement in ``p``.

    Requires a 2-dimensional polygon (degenerate polygons admit no placement
    and have no meaningful class decomposition).
    """
    if dimension(p) != 2:
        raise ValueError("translation classes require a 2-dimensional polygon")
    return [s for s, _ in _classes_with_room(p, threads=threads)]


def is_z_delta2_free(p: Polygon) -> FreenessVerdict:
    """No unimodular lattice triangle inside the interior of ``p``.

    Equivalent to the interior lattice points being collinear: the interior
    lattice set of a convex polygon contains every lattice point of its own
    hull, and any such non-collinear set triangulates into unimodular
    triangles.  The returned violation is the lexicographically first
    unimodular triple of interior lattice points.
    """
    if dimension(p) < 2:
        return FreenessVerdict("Z", True, None)
    ipts = _int_points(lattice_points(p, "interior"))
    if _collinear(ipts):
        return FreenessVerdict("Z", True, None)
    for trip in _unimodular_triples(ipts):
        return FreenessVerdict("Z", False, convex_hull(trip))
    raise RuntimeError(
        "non-collinear interior lattice points must contain a unimodular triangle"
    )


def _collinear(pts: list[tuple[int, int]]) -> bool:
    if len(pts) < 3:
        return True
    (x0, y0), (x1, y1) = pts[0], pts[1]
    dx, dy = x1 - x0, y1 - y0
    return all(dx * (y - y0) - dy * (x - x0) == 0 for x, y in pts[2:])


def is_r_delta2_free(p: Polygon, threads: int = 1) -> FreenessVerdict:
    """No rational translate of a unimodular lattice triangle inside int(p).

    A class admits an interior placement exactly when its feasible-translation
    set is 2-dimensional; the violation returned is the representative
    translated by the vertex centroid of that set (a strictly interior
    placement).  Classes are scanned in canonical order, so the verdict is
    deterministic regardless of ``threads``.
    """
    if dimension(p) < 2:
        return FreenessVerdict("R", True, None)
    for rep, md in _classes_with_room(p, threads=threads):
        if dimension(md) == 2:
            return FreenessVerdict("R", False, rep.translate(vertex_centroid(md)))
    return FreenessVerdict("R", True, None)


def contains_copy(p: Polygon, ring: Ring) -> bool:
    """Whether any copy over ``ring`` lies inside ``p`` (boundary allowed)."""
    ring = as_ring(ring)
    if dimension(p) < 2:
        return False
    if ring == "Z":
        pts = _int_points(lattice_points(p, "all"))
        for _ in _unimodular_triples(pts):
            return True
        return False
    return bool(_classes_with_room(p))


def interior_translate_exists(p: Polygon, s: Polygon) -> bool:
    """Whether some translate of full-dimensional ``s`` lies in int(p).

    True exactly when the feasible-translation set is 2-dimensional (interior
    points of that set are the strictly interior placements).
    """
    if dimension(s) != 2:
        raise ValueError("interior_translate_exists requires a 2-dimensional body")
    return dimension(minkowski_difference(p, s)) == 2
