"""Stage one: overlay a region with a grid of whole stock panels.

The grid is anchored at a shared origin, never at the region itself, so
neighbouring regions cut from the same stock line up. Grid cells wholly
inside the region become whole-panel placements; cells the boundary cuts
through contribute their intersection with the region as irregular
off-cut outlines for the nesting stage.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from shapely import prepare
from shapely.geometry import box as shapely_box

from .errors import ConfigurationError
from .geometry import (
    Point,
    PolygonRegion,
    Rect,
    RectDim,
    Ring,
    area_tolerance,
    clip_rect,
    region_area,
    region_to_shapely,
    ring_area,
    ring_bbox,
)

__all__ = [
    "StockPanel",
    "WholePanelPlacement",
    "OverlayPlan",
    "compute_overlay",
    "select_stock_panel",
]


@dataclass(frozen=True)
class StockPanel:
    """A purchasable panel size."""

    id: str
    dims: RectDim

    def oriented(self, rotated: bool) -> RectDim:
        if rotated:
            return RectDim(self.dims.height, self.dims.width)
        return self.dims


@dataclass(frozen=True)
class WholePanelPlacement:
    """One whole panel, axis-aligned on the grid."""

    panel_id: str
    cell: Rect


@dataclass(frozen=True)
class OverlayPlan:
    """Result of tiling one region with one panel size and orientation."""

    region: PolygonRegion
    panel: StockPanel
    rotated: bool
    origin: Point
    whole: tuple[WholePanelPlacement, ...]
    offcuts: tuple[Ring, ...]

    @property
    def cell_dims(self) -> RectDim:
        return self.panel.oriented(self.rotated)

    @property
    def whole_area(self) -> float:
        return len(self.whole) * self.cell_dims.area

    @property
    def offcut_area(self) -> float:
        return sum(abs(ring_area(r)) for r in self.offcuts)


def compute_overlay(
    region: PolygonRegion,
    panel: StockPanel,
    rotated: bool,
    origin: Point,
) -> OverlayPlan:
    """Tile the region with grid cells of the oriented panel size.

    Cells are visited row by row from the bottom, left to right, and
    off-cuts keep that discovery order. A cell counts as whole when the
    region covers it entirely (boundary contact included); otherwise its
    intersection with the region, if any, is emitted as off-cut outlines
    in region coordinates.
    """
    dims = panel.oriented(rotated)
    w, h = dims.width, dims.height
    ox, oy = origin
    area = region_area(region)
    tol = area_tolerance(area)
    minx, miny, maxx, maxy = ring_bbox(region.outer)
    k0 = math.floor((minx - ox) / w)
    k1 = math.ceil((maxx - ox) / w)
    m0 = math.floor((miny - oy) / h)
    m1 = math.ceil((maxy - oy) / h)
    poly = region_to_shapely(region)
    prepare(poly)
    whole: list[WholePanelPlacement] = []
    offcuts: list[Ring] = []
    for m in range(m0, max(m1, m0 + 1)):
        for k in range(k0, max(k1, k0 + 1)):
            cell = Rect(ox + k * w, oy + m * h, w, h)
            cell_box = shapely_box(cell.x, cell.y, cell.x + cell.width, cell.y + cell.height)
            if poly.covers(cell_box):
                whole.append(WholePanelPlacement(panel_id=panel.id, cell=cell))
                continue
            inter_area = poly.intersection(cell_box).area
            if inter_area <= tol:
                continue
            if inter_area >= cell.area - tol:
                whole.append(WholePanelPlacement(panel_id=panel.id, cell=cell))
                continue
            for piece in clip_rect(region, cell):
                offcuts.append(piece.outer)
    return OverlayPlan(
        region=region,
        panel=panel,
        rotated=rotated,
        origin=origin,
        whole=tuple(whole),
        offcuts=tuple(offcuts),
    )


def select_stock_panel(
    regions: Sequence[PolygonRegion],
    panels: Sequence[StockPanel],
    origin: Point,
    allow_rotation: bool,
) -> tuple[StockPanel, bool, list[OverlayPlan]]:
    """Pick the panel size and orientation used for the whole job.

    Every candidate orientation is overlaid on every region; the winner
    covers the most area with whole panels, with ties broken by fewer
    off-cuts, then smaller panel area, then candidate order (as-listed
    before rotated). All regions share the choice so stage two nests one
    panel size.
    """
    if not panels:
        raise ConfigurationError("no candidate stock panels given")
    ids = [p.id for p in panels]
    if len(set(ids)) != len(ids):
        raise ConfigurationError(f"duplicate stock panel ids: {ids}")
    best_key: tuple | None = None
    best: tuple[StockPanel, bool, list[OverlayPlan]] | None = None
    for ci, panel in enumerate(panels):
        orientations = [False]
        if allow_rotation and panel.dims.width != panel.dims.height:
            orientations.append(True)
        for rotated in orientations:
            plans = [compute_overlay(r, panel, rotated, origin) for r in regions]
            key = (
                -sum(p.whole_area for p in plans),
                sum(len(p.offcuts) for p in plans),
                panel.dims.area,
                ci,
                rotated,
            )
            if best_key is None or key < best_key:
                best_key = key
                best = (panel, rotated, plans)
    assert best is not None
    return best
