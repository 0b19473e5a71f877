"""Unit tests for the whole-panel overlay stage."""

from __future__ import annotations

import random

import pytest
from shapely.geometry import Polygon as ShapelyPolygon

from helpers import rand_rectilinear_region
from panelplan.errors import ConfigurationError
from panelplan.geometry import PolygonRegion, RectDim, region_area, ring_area
from panelplan.overlay import StockPanel, compute_overlay, select_stock_panel

PANEL = StockPanel(id="p1", dims=RectDim(50.0, 100.0))

# 300 by 300 square with a 50 by 100 opening whose corner sits at (50, 50).
PUNCHED_SQUARE = PolygonRegion(
    outer=((0.0, 0.0), (300.0, 0.0), (300.0, 300.0), (0.0, 300.0)),
    holes=(((50.0, 50.0), (50.0, 150.0), (100.0, 150.0), (100.0, 50.0)),),
)


class TestComputeOverlay:
    def test_punched_square_whole_count(self):
        plan = compute_overlay(PUNCHED_SQUARE, PANEL, False, (0.0, 0.0))
        assert len(plan.whole) == 16
        assert len(plan.offcuts) == 2

    def test_punched_square_offcut_outlines(self):
        plan = compute_overlay(PUNCHED_SQUARE, PANEL, False, (0.0, 0.0))
        outlines = [frozenset(r) for r in plan.offcuts]
        assert frozenset({(50.0, 0.0), (100.0, 0.0), (100.0, 50.0), (50.0, 50.0)}) in outlines
        assert frozenset({(50.0, 150.0), (100.0, 150.0), (100.0, 200.0), (50.0, 200.0)}) in outlines
        for outline in plan.offcuts:
            assert abs(ring_area(outline)) == pytest.approx(2500.0)

    def test_area_conservation_on_punched_square(self):
        plan = compute_overlay(PUNCHED_SQUARE, PANEL, False, (0.0, 0.0))
        total = plan.whole_area + plan.offcut_area
        assert total == pytest.approx(region_area(PUNCHED_SQUARE), rel=1e-9)

    def test_rotated_orientation_swaps_cell(self):
        wide = StockPanel(id="w", dims=RectDim(100.0, 50.0))
        plan = compute_overlay(PUNCHED_SQUARE, wide, True, (0.0, 0.0))
        assert plan.cell_dims == RectDim(50.0, 100.0)
        assert len(plan.whole) == 16

    def test_cells_visited_bottom_up_left_right(self):
        plan = compute_overlay(PUNCHED_SQUARE, PANEL, False, (0.0, 0.0))
        cells = [(w.cell.y, w.cell.x) for w in plan.whole]
        assert cells == sorted(cells)

    def test_origin_shift_changes_grid(self):
        region = PolygonRegion(
            outer=((0.0, 0.0), (100.0, 0.0), (100.0, 100.0), (0.0, 100.0))
        )
        panel = StockPanel(id="s", dims=RectDim(50.0, 50.0))
        aligned = compute_overlay(region, panel, False, (0.0, 0.0))
        shifted = compute_overlay(region, panel, False, (25.0, 0.0))
        assert len(aligned.whole) == 4
        assert not aligned.offcuts
        assert len(shifted.whole) == 2
        assert len(shifted.offcuts) == 4

    def test_boundary_contact_still_whole(self):
        region = PolygonRegion(
            outer=((0.0, 0.0), (50.0, 0.0), (50.0, 100.0), (0.0, 100.0))
        )
        plan = compute_overlay(region, PANEL, False, (0.0, 0.0))
        assert len(plan.whole) == 1
        assert not plan.offcuts

    def test_region_smaller_than_cell(self):
        region = PolygonRegion(
            outer=((10.0, 10.0), (30.0, 10.0), (30.0, 40.0), (10.0, 40.0))
        )
        plan = compute_overlay(region, PANEL, False, (0.0, 0.0))
        assert plan.whole == ()
        assert len(plan.offcuts) == 1
        assert abs(ring_area(plan.offcuts[0])) == pytest.approx(600.0)

    def test_area_conservation_random_regions(self):
        rng = random.Random(31337)
        panel = StockPanel(id="r", dims=RectDim(40.0, 70.0))
        for _ in range(25):
            region = rand_rectilinear_region(rng)
            origin = (rng.choice([0.0, 10.0, -15.0]), rng.choice([0.0, 5.0, -20.0]))
            plan = compute_overlay(region, panel, rng.random() < 0.5, origin)
            total = plan.whole_area + plan.offcut_area
            want = region_area(region)
            assert total == pytest.approx(want, rel=1e-6)

    def test_whole_cells_really_inside(self):
        rng = random.Random(4)
        panel = StockPanel(id="r", dims=RectDim(40.0, 70.0))
        for _ in range(10):
            region = rand_rectilinear_region(rng)
            plan = compute_overlay(region, panel, False, (0.0, 0.0))
            poly = ShapelyPolygon(region.outer, [list(h) for h in region.holes])
            for w in plan.whole:
                cell = ShapelyPolygon(w.cell.corners)
                assert poly.intersection(cell).area == pytest.approx(w.cell.area, rel=1e-9)


class TestSelectStockPanel:
    SQUARE_120 = PolygonRegion(
        outer=((0.0, 0.0), (120.0, 0.0), (120.0, 120.0), (0.0, 120.0))
    )

    def test_prefers_more_whole_coverage(self):
        panels = [
            StockPanel(id="a", dims=RectDim(50.0, 50.0)),
            StockPanel(id="b", dims=RectDim(60.0, 60.0)),
        ]
        panel, rotated, plans = select_stock_panel(
            [self.SQUARE_120], panels, (0.0, 0.0), allow_rotation=False
        )
        # Four 60-squares tile 120x120 exactly; 50-squares cover only 10000.
        assert panel.id == "b"
        assert not rotated
        assert plans[0].whole_area == pytest.approx(14400.0)

    def test_rotation_candidate_wins(self):
        region = PolygonRegion(
            outer=((0.0, 0.0), (100.0, 0.0), (100.0, 50.0), (0.0, 50.0))
        )
        panels = [StockPanel(id="tall", dims=RectDim(50.0, 100.0))]
        panel, rotated, plans = select_stock_panel(
            [region], panels, (0.0, 0.0), allow_rotation=True
        )
        assert panel.id == "tall"
        assert rotated
        assert len(plans[0].whole) == 1

    def test_rotation_disallowed(self):
        region = PolygonRegion(
            outer=((0.0, 0.0), (100.0, 0.0), (100.0, 50.0), (0.0, 50.0))
        )
        panels = [StockPanel(id="tall", dims=RectDim(50.0, 100.0))]
        _, rotated, plans = select_stock_panel(
            [region], panels, (0.0, 0.0), allow_rotation=False
        )
        assert not rotated
        assert plans[0].whole == ()

    def test_tie_broken_by_smaller_panel(self):
        # Neither panel fits the thin strip whole, so whole coverage ties
        # at zero and both give one off-cut; the smaller panel wins.
        strip = PolygonRegion(outer=((0.0, 0.0), (30.0, 0.0), (30.0, 10.0), (0.0, 10.0)))
        panels = [
            StockPanel(id="big", dims=RectDim(80.0, 80.0)),
            StockPanel(id="small", dims=RectDim(40.0, 40.0)),
        ]
        panel, _, _ = select_stock_panel([strip], panels, (0.0, 0.0), allow_rotation=False)
        assert panel.id == "small"

    def test_no_candidates_rejected(self):
        with pytest.raises(ConfigurationError):
            select_stock_panel([self.SQUARE_120], [], (0.0, 0.0), allow_rotation=False)

    def test_duplicate_ids_rejected(self):
        panels = [
            StockPanel(id="a", dims=RectDim(50.0, 50.0)),
            StockPanel(id="a", dims=RectDim(60.0, 60.0)),
        ]
        with pytest.raises(ConfigurationError):
            select_stock_panel([self.SQUARE_120], panels, (0.0, 0.0), allow_rotation=False)

    def test_multiple_regions_share_choice(self):
        regions = [
            self.SQUARE_120,
            PolygonRegion(outer=((0.0, 0.0), (60.0, 0.0), (60.0, 60.0), (0.0, 60.0))),
        ]
        panels = [
            StockPanel(id="a", dims=RectDim(50.0, 50.0)),
            StockPanel(id="b", dims=RectDim(60.0, 60.0)),
        ]
        panel, _, plans = select_stock_panel(regions, panels, (0.0, 0.0), allow_rotation=False)
        assert panel.id == "b"
        assert len(plans) == 2
        assert len(plans[1].whole) == 1
