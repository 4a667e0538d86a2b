"""Exact polygon arithmetic: hulls, clipping, Minkowski algebra, containment."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deltafree import (
    HalfPlane,
    Point,
    Polygon,
    as_rat,
    bounding_box,
    clip,
    contains_point,
    contains_polygon,
    convex_hull,
    dimension,
    doubled_area,
    edges,
    halfplanes,
    intersect,
    lattice_points,
    minkowski_difference,
    minkowski_sum,
    point,
    vertex_centroid,
)

from helpers import F, P, UNIT_SQUARE, UNIT_TRIANGLE, square

settings.register_profile("suite", derandomize=True, deadline=None, max_examples=80)
settings.load_profile("suite")

rats = st.fractions(min_value=-4, max_value=4, max_denominator=6)
points_st = st.tuples(rats, rats)
polys = (
    st.lists(points_st, min_size=1, max_size=7)
    .map(convex_hull)
    .filter(lambda p: p is not None)
)
full_dim_polys = polys.filter(lambda p: dimension(p) == 2)


class TestRationals:
    def test_as_rat_accepts_exact_inputs(self):
        assert as_rat(3) == F(3)
        assert as_rat("10/3") == F(10, 3)
        assert as_rat("-4/3") == F(-4, 3)
        assert as_rat("0.21") == F(21, 100)
        assert as_rat(F(5, 7)) == F(5, 7)

    def test_as_rat_rejects_floats_and_bools(self):
        with pytest.raises(TypeError):
            as_rat(0.21)
        with pytest.raises(TypeError):
            as_rat(True)

    def test_point_constructor_parses(self):
        assert point("1/2", "-3") == Point(F(1, 2), F(-3))


class TestHull:
    def test_empty_and_low_dimension(self):
        assert convex_hull([]) is None
        assert convex_hull([(2, 3), (2, 3)]) == P((2, 3))
        seg = convex_hull([(1, 1), (0, 0), (2, 2)])
        assert seg.vertices == (point(0, 0), point(2, 2))
        assert dimension(None) == -1
        assert dimension(P((2, 3))) == 0
        assert dimension(seg) == 1
        assert dimension(UNIT_SQUARE) == 2

    def test_canonical_form(self):
        poly = convex_hull([(1, 1), (0, 1), (0, 0), (1, 0), ("1/2", "1/2")])
        assert poly.vertices == (point(0, 0), point(1, 0), point(1, 1), point(0, 1))

    def test_collinear_vertices_are_stripped(self):
        poly = convex_hull([(0, 0), (1, 0), (2, 0), (2, 2)])
        assert poly.vertices == (point(0, 0), point(2, 0), point(2, 2))

    def test_validation_rejects_non_canonical(self):
        with pytest.raises(ValueError):
            Polygon((point(1, 0), point(0, 0), point(0, 1)))  # not lex-min first
        with pytest.raises(ValueError):
            Polygon((point(0, 0), point(0, 1), point(1, 0)))  # clockwise

    @given(st.lists(points_st, min_size=1, max_size=7), st.randoms(use_true_random=False))
    def test_hull_ignores_order_and_duplicates(self, pts, rng):
        base = convex_hull(pts)
        shuffled = list(pts) + [pts[0]]
        rng.shuffle(shuffled)
        assert convex_hull(shuffled) == base

    @given(polys)
    def test_hull_idempotent(self, p):
        assert convex_hull(p.vertices) == p

    @given(polys)
    def test_vertices_are_extreme(self, p):
        # Dropping any vertex changes the hull.
        if len(p.vertices) == 1:
            return
        for i in range(len(p.vertices)):
            rest = [v for j, v in enumerate(p.vertices) if j != i]
            assert convex_hull(rest) != p


class TestHalfPlanes:
    def test_unit_square_facets(self):
        hps = halfplanes(UNIT_SQUARE)
        assert len(hps) == 4
        assert contains_point(UNIT_SQUARE, point("1/2", "1/2"), strict=True)
        for h in hps:
            assert h.contains(point("1/2", "1/2"), strict=True)

    @given(polys, points_st)
    def test_halfplane_description_matches_membership(self, p, q):
        qp = point(*q)
        in_all = all(h.contains(qp) for h in halfplanes(p))
        assert in_all == contains_point(p, qp)

    @given(polys, points_st)
    def test_strict_halfplane_membership_matches_relative_interior(self, p, q):
        qp = point(*q)
        if dimension(p) == 2:
            strict_all = all(h.contains(qp, strict=True) for h in halfplanes(p))
            assert strict_all == contains_point(p, qp, strict=True)


class TestClipIntersect:
    def test_clip_keeps_inside_polygon_unchanged(self):
        h = HalfPlane(F(1), F(0), F(5))
        assert clip(UNIT_SQUARE, h) == UNIT_SQUARE

    def test_clip_cuts_exactly(self):
        h = HalfPlane(F(1), F(0), F(1, 2))  # x <= 1/2
        assert clip(UNIT_SQUARE, h) == P((0, 0), ("1/2", 0), ("1/2", 1), (0, 1))

    def test_clip_to_edge_and_empty(self):
        assert clip(UNIT_SQUARE, HalfPlane(F(1), F(0), F(0))) == P((0, 0), (0, 1))
        assert clip(UNIT_SQUARE, HalfPlane(F(1), F(0), F(-1))) is None

    def test_triangle_meets_reflected_translate_in_segment(self):
        other = P((1, 0), (0, 0), (1, -1))  # -triangle + (1, 0)
        got = intersect(UNIT_TRIANGLE, other)
        assert got == P((0, 0), (1, 0))
        assert dimension(got) == 1

    @given(full_dim_polys, full_dim_polys)
    def test_intersection_is_the_set_intersection(self, p, q):
        r = intersect(p, q)
        assert intersect(q, p) == r
        if r is not None:
            for v in r.vertices:
                assert contains_point(p, v) and contains_point(q, v)
        # Sample membership at vertices and the centroids.
        probes = list(p.vertices) + list(q.vertices)
        probes.append(vertex_centroid(p))
        probes.append(vertex_centroid(q))
        for probe in probes:
            both = contains_point(p, probe) and contains_point(q, probe)
            assert both == contains_point(r, probe)


class TestMinkowski:
    def test_triangle_plus_negative_unit_square_is_pentagon(self):
        nsq = P((0, 0), (-1, 0), (0, -1), (-1, -1))
        got = minkowski_sum(UNIT_TRIANGLE, nsq)
        assert got == P((-1, -1), (1, -1), (1, 0), (0, 1), (-1, 1))

    def test_difference_of_squares(self):
        assert minkowski_difference(square(2), UNIT_TRIANGLE) == UNIT_SQUARE

    def test_difference_with_itself_is_origin(self):
        for p in (UNIT_SQUARE, UNIT_TRIANGLE, P((0, 0), (3, 1), (1, 4))):
            assert minkowski_difference(p, p) == P((0, 0))

    def test_difference_empty_when_too_big(self):
        assert minkowski_difference(UNIT_SQUARE, square(3)) is None

    @given(full_dim_polys, full_dim_polys)
    def test_sum_difference_cancellation(self, a, b):
        assert minkowski_difference(minkowski_sum(a, b), b) == a

    @given(full_dim_polys, full_dim_polys)
    def test_difference_translates_fit(self, p, s):
        room = minkowski_difference(p, s)
        if room is None:
            return
        for t in room.vertices:
            assert contains_polygon(p, s.translate(t))


class TestContainment:
    def test_point_containment_unit_square(self):
        assert contains_point(UNIT_SQUARE, point("1/2", "1/2"), strict=True)
        assert contains_point(UNIT_SQUARE, point(0, "1/2"))
        assert not contains_point(UNIT_SQUARE, point(0, "1/2"), strict=True)
        assert not contains_point(UNIT_SQUARE, point(2, 0))

    def test_segment_relative_interior(self):
        seg = P((0, 0), (2, 0))
        assert contains_point(seg, point(1, 0), strict=True)
        assert contains_point(seg, point(0, 0))
        assert not contains_point(seg, point(0, 0), strict=True)
        assert not contains_point(seg, point(1, "1/2"))

    def test_polygon_containment(self):
        assert contains_polygon(square(2), UNIT_SQUARE)
        assert not contains_polygon(UNIT_SQUARE, square(2))
        inner = P(("1/4", "1/4"), ("3/4", "1/4"), ("1/2", "3/4"))
        assert contains_polygon(UNIT_SQUARE, inner, strict=True)
        assert not contains_polygon(UNIT_SQUARE, UNIT_SQUARE, strict=True)
        assert contains_polygon(UNIT_SQUARE, None)


class TestMeasures:
    def test_doubled_area(self):
        assert doubled_area(UNIT_SQUARE) == 2
        assert doubled_area(UNIT_TRIANGLE) == 1
        assert doubled_area(P((0, 0), (1, 0))) == 0
        assert doubled_area(None) == 0

    def test_vertex_centroid_and_bbox(self):
        assert vertex_centroid(UNIT_SQUARE) == point("1/2", "1/2")
        assert bounding_box(P((-1, 2), (3, -2), (0, 5))) == (F(-1), F(-2), F(3), F(5))

    def test_edges(self):
        es = edges(UNIT_TRIANGLE)
        assert es == [
            (point(0, 0), point(1, 0)),
            (point(1, 0), point(0, 1)),
            (point(0, 1), point(0, 0)),
        ]

    @given(full_dim_polys, points_st)
    def test_translation_invariance(self, p, d):
        dp = point(*d)
        q = p.translate(dp)
        assert doubled_area(q) == doubled_area(p)
        assert vertex_centroid(q) == vertex_centroid(p) + dp


class TestLatticePoints:
    def test_square_partition(self):
        allpts = lattice_points(square(2))
        interior = lattice_points(square(2), "interior")
        boundary = lattice_points(square(2), "boundary")
        assert len(allpts) == 9
        assert interior == [point(1, 1)]
        assert len(boundary) == 8
        assert sorted(boundary + interior) == allpts

    def test_segment_and_point(self):
        assert lattice_points(P((0, 0), (2, 0))) == [point(0, 0), point(1, 0), point(2, 0)]
        assert lattice_points(P((0, 0), (2, 0)), "interior") == [point(1, 0)]
        assert lattice_points(P(("1/2", "1/2"))) == []

    @given(full_dim_polys)
    def test_partition_property(self, p):
        allpts = lattice_points(p)
        interior = lattice_points(p, "interior")
        boundary = lattice_points(p, "boundary")
        assert sorted(interior + boundary) == allpts
        for q in interior:
            assert contains_point(p, q, strict=True)
        for q in boundary:
            assert contains_point(p, q) and not contains_point(p, q, strict=True)
