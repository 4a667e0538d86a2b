"""Z- and R-delta2-freeness decisions with verifiable violations."""

import random

import pytest

from deltafree import (
    contains_copy,
    contains_polygon,
    dimension,
    enum_unimodular_triangles,
    interior_translate_exists,
    is_r_delta2_free,
    is_unimodular_delta2_copy,
    is_z_delta2_free,
    lattice_points,
    minkowski_difference,
    point,
    translation_classes,
)

from helpers import (
    P,
    UNIT_SQUARE,
    UNIT_TRIANGLE,
    brute_unimodular_triangles,
    rand_polygon,
    square,
)

WIDE_TRIANGLE = P(("1/3", "5/3"), ("-4/3", "-5/3"), (2, 0))
CROSS = P((1, 0), (0, 1), (-1, 0), (0, -1))
CANON_TRIANGLE = P((-1, -1), (1, 0), (0, 1))


def vstrip(n):
    return P((-1, -n), (1, -n), (1, n), (-1, n))


def narrow_strip(n):
    return P((0, -n), (1, -n), (1, n), (0, n))


class TestEnumeration:
    def test_unit_square_has_four(self):
        tris = enum_unimodular_triangles(UNIT_SQUARE)
        assert len(tris) == 4
        for tri in tris:
            assert is_unimodular_delta2_copy(tri, "Z")

    def test_matches_brute_force(self):
        for p in (P((0, 0), (2, 0), (2, 1), (0, 1)), square(2), WIDE_TRIANGLE):
            pts = [(int(q.x), int(q.y)) for q in lattice_points(p)]
            brute = brute_unimodular_triangles(pts)
            got = enum_unimodular_triangles(p)
            assert len(got) == len(brute)
            got_keys = {tuple(sorted((int(v.x), int(v.y)) for v in t.vertices)) for t in got}
            assert got_keys == {tuple(t) for t in brute}


class TestTranslationClasses:
    def test_unit_square_classes(self):
        classes = translation_classes(UNIT_SQUARE)
        assert len(classes) == 4
        for rep in classes:
            assert rep.vertices[0] == point(0, 0) or rep.vertices[0] < point(0, 0)
            md = minkowski_difference(UNIT_SQUARE, rep)
            assert md is not None and dimension(md) == 0

    def test_requires_full_dimension(self):
        with pytest.raises(ValueError):
            translation_classes(P((0, 0), (1, 0)))

    def test_anchored_and_deterministic(self):
        a = translation_classes(square(2))
        b = translation_classes(square(2), threads=3)
        assert a == b
        for rep in a:
            assert min(rep.vertices) == point(0, 0)


class TestZFree:
    def test_big_square_violation(self):
        verdict = is_z_delta2_free(square(3))
        assert verdict.ring == "Z"
        assert not verdict.free
        assert verdict.violation == P((1, 1), (2, 1), (1, 2))

    def test_small_square_free(self):
        assert is_z_delta2_free(square(2)).free
        assert is_z_delta2_free(UNIT_SQUARE).free

    def test_collinear_interior_is_free(self):
        assert is_z_delta2_free(P((0, 0), (2, 0), (2, 4), (0, 4))).free
        assert is_z_delta2_free(WIDE_TRIANGLE).free

    def test_strips_are_free(self):
        for n in (1, 3, 6):
            assert is_z_delta2_free(vstrip(n)).free

    def test_degenerate_is_free(self):
        assert is_z_delta2_free(P((0, 0), (9, 0))).free
        assert is_z_delta2_free(P((4, 5))).free

    def test_violations_verify(self):
        rng = random.Random(2301)
        seen_violation = False
        for _ in range(60):
            p = rand_polygon(rng, max_abs=3, max_den=3)
            verdict = is_z_delta2_free(p)
            if verdict.free:
                continue
            seen_violation = True
            tri = verdict.violation
            assert is_unimodular_delta2_copy(tri, "Z")
            assert contains_polygon(p, tri, strict=True)
        assert seen_violation


class TestRFree:
    def test_unit_square_free(self):
        assert is_r_delta2_free(UNIT_SQUARE).free

    def test_cross_and_triangle_free(self):
        assert is_r_delta2_free(CROSS).free
        assert is_r_delta2_free(CANON_TRIANGLE).free

    def test_double_square_not_free(self):
        verdict = is_r_delta2_free(square(2))
        assert not verdict.free
        tri = verdict.violation
        assert is_unimodular_delta2_copy(tri, "R")
        assert contains_polygon(square(2), tri, strict=True)

    def test_slightly_inflated_square_not_free(self):
        p = P(("-1/10", "-1/10"), ("11/10", "-1/10"), ("11/10", "11/10"), ("-1/10", "11/10"))
        verdict = is_r_delta2_free(p)
        assert not verdict.free
        assert contains_polygon(p, verdict.violation, strict=True)

    def test_narrow_strips_are_free(self):
        for n in (1, 3, 6):
            assert is_r_delta2_free(narrow_strip(n)).free

    def test_threads_do_not_change_the_verdict(self):
        for p in (square(2), CROSS, WIDE_TRIANGLE):
            assert is_r_delta2_free(p) == is_r_delta2_free(p, threads=3)

    def test_degenerate_is_free(self):
        assert is_r_delta2_free(P((0, 0), (9, 0))).free

    def test_r_free_implies_z_free(self):
        rng = random.Random(2302)
        for _ in range(40):
            p = rand_polygon(rng, max_abs=3, max_den=3)
            r_verdict = is_r_delta2_free(p)
            if r_verdict.free:
                assert is_z_delta2_free(p).free
            if not is_z_delta2_free(p).free:
                assert not r_verdict.free


class TestContainsCopy:
    def test_small_bodies_contain_none(self):
        half = P((0, 0), ("1/2", 0), ("1/2", "1/2"), (0, "1/2"))
        assert not contains_copy(half, "Z")
        assert not contains_copy(half, "R")
        threequarter = P((0, 0), ("3/4", 0), ("3/4", "3/4"), (0, "3/4"))
        assert not contains_copy(threequarter, "R")

    def test_unit_square_contains_copies(self):
        assert contains_copy(UNIT_SQUARE, "Z")
        assert contains_copy(UNIT_SQUARE, "R")

    def test_shifted_square_ring_difference(self):
        p = UNIT_SQUARE.translate(point("1/3", "1/7"))
        assert not contains_copy(p, "Z")  # no lattice triangle has room
        assert contains_copy(p, "R")

    def test_degenerate(self):
        assert not contains_copy(P((0, 0), (5, 0)), "Z")
        assert not contains_copy(P((0, 0), (5, 0)), "R")

    def test_not_free_implies_contains(self):
        rng = random.Random(2303)
        for _ in range(30):
            p = rand_polygon(rng, max_abs=3, max_den=2)
            if not is_z_delta2_free(p).free:
                assert contains_copy(p, "Z")
            if not is_r_delta2_free(p).free:
                assert contains_copy(p, "R")


class TestInteriorTranslate:
    def test_inflated_square_admits_triangle(self):
        p = P(("-1/10", "-1/10"), ("11/10", "-1/10"), ("11/10", "11/10"), ("-1/10", "11/10"))
        assert interior_translate_exists(p, UNIT_TRIANGLE)

    def test_exact_fit_is_not_interior(self):
        assert not interior_translate_exists(UNIT_TRIANGLE, UNIT_TRIANGLE)
        assert not interior_translate_exists(UNIT_SQUARE, UNIT_TRIANGLE)

    def test_requires_full_dimensional_body(self):
        with pytest.raises(ValueError):
            interior_translate_exists(UNIT_SQUARE, P((0, 0), (1, 0)))
