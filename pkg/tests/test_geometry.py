"""Unit tests for the polygon kernel."""

from __future__ import annotations

import math
import random

import pytest
from shapely.geometry import Polygon as ShapelyPolygon
from shapely.geometry import box as shapely_box

from helpers import overlap_oracle, rand_piece_ring, rand_rectilinear_region
from panelplan.errors import DegenerateGeometryError
from panelplan.geometry import (
    PolygonRegion,
    Rect,
    RectDim,
    Rotation,
    Transform,
    apply_transform,
    clean_ring,
    clip_rect,
    convex_parts,
    pieces_overlap,
    rect_fully_inside,
    region_area,
    ring_area,
    ring_bbox,
    ring_perimeter,
    shared_edge_length,
)

UNIT_SQUARE = ((0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0))
L_SHAPE = ((0.0, 0.0), (2.0, 0.0), (2.0, 1.0), (1.0, 1.0), (1.0, 2.0), (0.0, 2.0))


class TestRingArea:
    def test_unit_square_ccw(self):
        assert ring_area(UNIT_SQUARE) == 1.0

    def test_unit_square_cw(self):
        assert ring_area(tuple(reversed(UNIT_SQUARE))) == -1.0

    def test_l_shape(self):
        assert ring_area(L_SHAPE) == 3.0

    def test_too_few_vertices(self):
        with pytest.raises(DegenerateGeometryError):
            ring_area(((0.0, 0.0), (1.0, 0.0)))

    def test_zero_area(self):
        with pytest.raises(DegenerateGeometryError):
            ring_area(((0.0, 0.0), (1.0, 1.0), (2.0, 2.0)))


class TestRegionArea:
    def test_square_with_hole(self):
        region = PolygonRegion(
            outer=((0.0, 0.0), (300.0, 0.0), (300.0, 300.0), (0.0, 300.0)),
            holes=(((50.0, 50.0), (50.0, 150.0), (100.0, 150.0), (100.0, 50.0)),),
        )
        assert region_area(region) == 85000.0

    def test_hole_winding_ignored(self):
        hole_ccw = ((50.0, 50.0), (100.0, 50.0), (100.0, 150.0), (50.0, 150.0))
        region = PolygonRegion(
            outer=((0.0, 0.0), (300.0, 0.0), (300.0, 300.0), (0.0, 300.0)),
            holes=(hole_ccw,),
        )
        assert region_area(region) == 85000.0


class TestApplyTransform:
    def test_identity(self):
        assert apply_transform(L_SHAPE, Transform()) == L_SHAPE

    def test_flip_triangle(self):
        # Mirror about the bbox vertical axis, before any rotation.
        tri = ((0.0, 0.0), (2.0, 0.0), (0.0, 1.0))
        assert apply_transform(tri, Transform(flipped=True)) == (
            (2.0, 0.0),
            (0.0, 0.0),
            (2.0, 1.0),
        )

    def test_r90_swaps_bbox_dims(self):
        rect = ((0.0, 0.0), (4.0, 0.0), (4.0, 2.0), (0.0, 2.0))
        out = apply_transform(rect, Transform(rotation=Rotation.R90))
        minx, miny, maxx, maxy = ring_bbox(out)
        assert (maxx - minx, maxy - miny) == (2.0, 4.0)
        # Rotation is about the bbox centre, which therefore stays put.
        assert (minx + maxx) / 2 == 2.0
        assert (miny + maxy) / 2 == 1.0

    def test_translation_applied_last(self):
        out = apply_transform(UNIT_SQUARE, Transform(translation=(10.0, -3.0)))
        assert out[0] == (10.0, -3.0)

    @pytest.mark.parametrize("rotation", list(Rotation))
    @pytest.mark.parametrize("flipped", [False, True])
    def test_area_preserved(self, rotation, flipped):
        t = Transform(rotation=rotation, flipped=flipped, translation=(3.7, -1.2))
        before = abs(ring_area(L_SHAPE))
        after = abs(ring_area(apply_transform(L_SHAPE, t)))
        assert after == pytest.approx(before, rel=1e-9)

    def test_flip_preserves_orientation_sense(self):
        # A flip mirrors, so winding reverses sign.
        out = apply_transform(L_SHAPE, Transform(flipped=True))
        assert ring_area(out) == pytest.approx(-3.0, rel=1e-9)


class TestClipRect:
    REGION = PolygonRegion(
        outer=((0.0, 0.0), (300.0, 0.0), (300.0, 300.0), (0.0, 300.0)),
        holes=(((50.0, 50.0), (50.0, 150.0), (100.0, 150.0), (100.0, 50.0)),),
    )

    def test_cell_cut_by_hole(self):
        pieces = clip_rect(self.REGION, Rect(50.0, 0.0, 50.0, 100.0))
        assert len(pieces) == 1
        piece = pieces[0]
        assert region_area(piece) == pytest.approx(2500.0, rel=1e-12)
        assert set(piece.outer) == {(50.0, 0.0), (100.0, 0.0), (100.0, 50.0), (50.0, 50.0)}

    def test_cell_outside(self):
        assert clip_rect(self.REGION, Rect(400.0, 0.0, 50.0, 100.0)) == []

    def test_cell_fully_inside(self):
        pieces = clip_rect(self.REGION, Rect(150.0, 150.0, 50.0, 100.0))
        assert len(pieces) == 1
        assert region_area(pieces[0]) == pytest.approx(5000.0, rel=1e-12)

    def test_hole_splits_cell_in_two(self):
        # Cell straddles the hole vertically, leaving strips on both sides.
        pieces = clip_rect(self.REGION, Rect(40.0, 60.0, 70.0, 80.0))
        assert len(pieces) == 2
        areas = sorted(region_area(p) for p in pieces)
        assert areas == pytest.approx([10.0 * 80.0, 10.0 * 80.0])

    def test_outputs_hole_free(self):
        region = PolygonRegion(
            outer=((0.0, 0.0), (100.0, 0.0), (100.0, 100.0), (0.0, 100.0)),
            holes=(((40.0, 40.0), (40.0, 60.0), (60.0, 60.0), (60.0, 40.0)),),
        )
        pieces = clip_rect(region, Rect(0.0, 0.0, 100.0, 100.0))
        assert pieces
        for piece in pieces:
            assert piece.holes == ()
        total = sum(region_area(p) for p in pieces)
        assert total == pytest.approx(region_area(region), rel=1e-9)

    def test_area_conservation_random(self):
        rng = random.Random(20260822)
        for _ in range(40):
            region = rand_rectilinear_region(rng)
            rect = Rect(
                rng.uniform(-30.0, 120.0),
                rng.uniform(-30.0, 120.0),
                rng.uniform(20.0, 140.0),
                rng.uniform(20.0, 140.0),
            )
            pieces = clip_rect(region, rect)
            got = sum(region_area(p) for p in pieces)
            poly = ShapelyPolygon(region.outer, [list(h) for h in region.holes])
            want = poly.intersection(
                shapely_box(rect.x, rect.y, rect.x + rect.width, rect.y + rect.height)
            ).area
            assert got == pytest.approx(want, rel=1e-6, abs=1e-6)


class TestRectFullyInside:
    REGION = PolygonRegion(outer=((0.0, 0.0), (10.0, 0.0), (10.0, 10.0), (0.0, 10.0)))

    def test_inside(self):
        assert rect_fully_inside(self.REGION, Rect(1.0, 1.0, 3.0, 3.0))

    def test_boundary_contact_counts(self):
        assert rect_fully_inside(self.REGION, Rect(0.0, 0.0, 10.0, 10.0))

    def test_protruding(self):
        assert not rect_fully_inside(self.REGION, Rect(8.0, 8.0, 3.0, 3.0))

    def test_hole_blocks(self):
        region = PolygonRegion(
            outer=self.REGION.outer,
            holes=(((4.0, 4.0), (4.0, 6.0), (6.0, 6.0), (6.0, 4.0)),),
        )
        assert not rect_fully_inside(region, Rect(3.0, 3.0, 4.0, 4.0))


class TestPiecesOverlap:
    def test_shared_edge_is_not_overlap(self):
        a = UNIT_SQUARE
        b = tuple((x + 1.0, y) for x, y in UNIT_SQUARE)
        assert not pieces_overlap(a, b)

    def test_corner_contact_is_not_overlap(self):
        a = UNIT_SQUARE
        b = tuple((x + 1.0, y + 1.0) for x, y in UNIT_SQUARE)
        assert not pieces_overlap(a, b)

    def test_clear_overlap(self):
        a = UNIT_SQUARE
        b = tuple((x + 0.5, y + 0.5) for x, y in UNIT_SQUARE)
        assert pieces_overlap(a, b)

    def test_containment_is_overlap(self):
        big = ((0.0, 0.0), (5.0, 0.0), (5.0, 5.0), (0.0, 5.0))
        small = ((1.0, 1.0), (2.0, 1.0), (2.0, 2.0), (1.0, 2.0))
        assert pieces_overlap(big, small)
        assert pieces_overlap(small, big)

    def test_concave_notch_no_overlap(self):
        # Square tucked into the L's notch touches on two edges only.
        square = ((1.0, 1.0), (2.0, 1.0), (2.0, 2.0), (1.0, 2.0))
        assert not pieces_overlap(L_SHAPE, square)
        assert pieces_overlap(L_SHAPE, tuple((x - 0.25, y) for x, y in square))

    def test_matches_shapely_on_random_pairs(self):
        rng = random.Random(99)
        disagreements = []
        for i in range(300):
            a = rand_piece_ring(rng)
            b = rand_piece_ring(rng)
            mine = pieces_overlap(a, b)
            ref = overlap_oracle(a, b)
            if mine != ref:
                disagreements.append((i, a, b, mine, ref))
            assert pieces_overlap(a, b) == pieces_overlap(b, a)
        assert not disagreements

    def test_eps_contact_tolerated(self):
        # Overlap depth below the tolerance counts as contact, not overlap.
        b = tuple((x + 1.0 - 1e-12, y) for x, y in UNIT_SQUARE)
        assert not pieces_overlap(UNIT_SQUARE, b)


class TestConvexParts:
    def test_convex_returned_whole(self):
        parts = convex_parts(UNIT_SQUARE)
        assert parts is not None
        assert len(parts) == 1

    def test_concave_parts_cover_area(self):
        parts = convex_parts(L_SHAPE)
        assert parts is not None
        assert len(parts) >= 2
        total = sum(ring_area(p) for p in parts)
        assert total == pytest.approx(3.0, rel=1e-9)

    def test_random_pieces_cover_area(self):
        rng = random.Random(7)
        for _ in range(100):
            ring = rand_piece_ring(rng)
            parts = convex_parts(ring)
            assert parts is not None
            total = sum(ring_area(p) for p in parts)
            assert total == pytest.approx(abs(ring_area(ring)), rel=1e-9)


class TestSharedEdgeLength:
    PANEL = RectDim(50.0, 100.0)

    def test_single_piece_on_floor(self):
        square = ((0.0, 0.0), (50.0, 0.0), (50.0, 50.0), (0.0, 50.0))
        # Bottom, left and right edges all lie on the container rim.
        assert shared_edge_length(square, [], self.PANEL) == pytest.approx(150.0)

    def test_stacked_pair(self):
        lower = ((0.0, 0.0), (50.0, 0.0), (50.0, 50.0), (0.0, 50.0))
        upper = tuple((x, y + 50.0) for x, y in lower)
        assert shared_edge_length(upper, [lower], self.PANEL) == pytest.approx(200.0)

    def test_no_contact(self):
        island = ((10.0, 10.0), (20.0, 10.0), (20.0, 20.0), (10.0, 20.0))
        assert shared_edge_length(island, [], self.PANEL) == 0.0

    def test_partial_edge_coincidence(self):
        base = ((0.0, 0.0), (50.0, 0.0), (50.0, 10.0), (0.0, 10.0))
        small = ((10.0, 10.0), (30.0, 10.0), (30.0, 20.0), (10.0, 20.0))
        # Only the 20-long stretch of the small piece's bottom touches.
        assert shared_edge_length(small, [base], self.PANEL) == pytest.approx(20.0)

    def test_double_counting_merged(self):
        # Two neighbours each cover the same stretch of the target's bottom;
        # the coincidence is still counted once. Kept clear of the rim so
        # only neighbour contact contributes.
        target = ((5.0, 10.0), (45.0, 10.0), (45.0, 20.0), (5.0, 20.0))
        below_a = ((5.0, 0.0), (45.0, 0.0), (45.0, 10.0), (5.0, 10.0))
        below_b = ((15.0, 0.0), (35.0, 0.0), (35.0, 10.0), (15.0, 10.0))
        got = shared_edge_length(target, [below_a, below_b], self.PANEL)
        assert got == pytest.approx(40.0)

    def test_never_exceeds_perimeter(self):
        rng = random.Random(1234)
        for _ in range(60):
            target = rand_piece_ring(rng)
            neighbours = [rand_piece_ring(rng) for _ in range(3)]
            got = shared_edge_length(target, neighbours, RectDim(60.0, 60.0))
            assert got <= ring_perimeter(target) + 1e-9


class TestCleanRing:
    def test_drops_duplicate_and_collinear(self):
        noisy = (
            (0.0, 0.0),
            (1.0, 0.0),
            (1.0, 0.0),
            (2.0, 0.0),
            (2.0, 2.0),
            (0.0, 2.0),
        )
        assert clean_ring(noisy) == ((0.0, 0.0), (2.0, 0.0), (2.0, 2.0), (0.0, 2.0))

    def test_idempotent(self):
        cleaned = clean_ring(L_SHAPE)
        assert clean_ring(cleaned) == cleaned

    def test_refuses_degenerate(self):
        with pytest.raises(DegenerateGeometryError):
            clean_ring(((0.0, 0.0), (1.0, 0.0), (2.0, 0.0)))
