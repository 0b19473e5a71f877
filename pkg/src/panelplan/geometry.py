"""2D polygon kernel for panel layout work.

Coordinates are plain ``(x, y)`` float tuples. A ring is a tuple of
vertices without a repeated closing point; outer boundaries run
counter-clockwise and holes clockwise. Most predicates here are written
directly (shoelace area, separating-axis overlap, collinear interval
merging) so the placement loop stays cheap; clipping a rectangle against
an arbitrary region with holes is delegated to shapely.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Sequence

from shapely.geometry import Polygon as ShapelyPolygon
from shapely.geometry import box as shapely_box

from .errors import DegenerateGeometryError

__all__ = [
    "Point",
    "Ring",
    "Rect",
    "RectDim",
    "Rotation",
    "Transform",
    "PolygonRegion",
    "coord_tolerance",
    "area_tolerance",
    "ring_area",
    "ring_perimeter",
    "ring_bbox",
    "ensure_ccw",
    "clean_ring",
    "region_area",
    "apply_transform",
    "clip_rect",
    "rect_fully_inside",
    "pieces_overlap",
    "shared_edge_length",
    "convex_parts",
]

Point = tuple[float, float]
Ring = tuple[Point, ...]

# Relative factors for the two tolerance families used throughout:
# coordinates compare within 1e-9 of the model extent, areas within
# 1e-9 of the reference area.
_COORD_REL = 1e-9
_AREA_REL = 1e-9


def coord_tolerance(extent: float) -> float:
    """Absolute coordinate tolerance for a model of the given extent."""
    return _COORD_REL * max(abs(extent), 1.0)


def area_tolerance(reference_area: float) -> float:
    """Absolute area tolerance relative to a reference area."""
    return _AREA_REL * max(abs(reference_area), 1.0)


class Rotation(Enum):
    """Quarter-turn rotations, counter-clockwise."""

    R0 = 0
    R90 = 90
    R180 = 180
    R270 = 270


@dataclass(frozen=True)
class Transform:
    """Rigid placement of a polygon: optional mirror, quarter-turn, shift.

    The mirror (about the vertical axis of the polygon's bounding box)
    is applied first, then the rotation about the bounding-box centre,
    then the translation.
    """

    rotation: Rotation = Rotation.R0
    flipped: bool = False
    translation: Point = (0.0, 0.0)


@dataclass(frozen=True)
class RectDim:
    """Axis-aligned rectangle dimensions (no position)."""

    width: float
    height: float

    def __post_init__(self) -> None:
        if not (self.width > 0 and self.height > 0):
            raise DegenerateGeometryError(
                f"rectangle dimensions must be positive, got {self.width} x {self.height}"
            )

    @property
    def area(self) -> float:
        return self.width * self.height


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle positioned by its bottom-left corner."""

    x: float
    y: float
    width: float
    height: float

    def __post_init__(self) -> None:
        if not (self.width > 0 and self.height > 0):
            raise DegenerateGeometryError(
                f"rectangle dimensions must be positive, got {self.width} x {self.height}"
            )

    @property
    def area(self) -> float:
        return self.width * self.height

    @property
    def corners(self) -> Ring:
        x0, y0 = self.x, self.y
        x1, y1 = self.x + self.width, self.y + self.height
        return ((x0, y0), (x1, y0), (x1, y1), (x0, y1))


@dataclass(frozen=True)
class PolygonRegion:
    """Simple polygon with optional holes.

    Invariants (validated at scenario load, relied upon here): the outer
    ring is counter-clockwise, holes are clockwise, holes lie strictly
    inside the outer ring and are pairwise disjoint.
    """

    outer: Ring
    holes: tuple[Ring, ...] = ()


def _iter_edges(ring: Ring) -> Iterator[tuple[Point, Point]]:
    for i, p in enumerate(ring):
        yield p, ring[(i + 1) % len(ring)]


def ring_area(ring: Ring) -> float:
    """Signed shoelace area: positive for counter-clockwise rings."""
    if len(ring) < 3:
        raise DegenerateGeometryError(f"ring needs at least 3 vertices, got {len(ring)}")
    acc = 0.0
    for (x0, y0), (x1, y1) in _iter_edges(ring):
        acc += x0 * y1 - x1 * y0
    area = acc / 2.0
    if area == 0.0:
        raise DegenerateGeometryError("ring has zero area")
    return area


def ring_perimeter(ring: Ring) -> float:
    return sum(math.dist(p, q) for p, q in _iter_edges(ring))


def ring_bbox(ring: Ring) -> tuple[float, float, float, float]:
    xs = [p[0] for p in ring]
    ys = [p[1] for p in ring]
    return min(xs), min(ys), max(xs), max(ys)


def ring_extent(ring: Ring) -> float:
    minx, miny, maxx, maxy = ring_bbox(ring)
    return max(maxx - minx, maxy - miny)


def ensure_ccw(ring: Ring) -> Ring:
    """Return the ring with counter-clockwise winding."""
    return ring if ring_area(ring) > 0 else tuple(reversed(ring))


def clean_ring(ring: Ring, eps: float | None = None) -> Ring:
    """Drop repeated and collinear vertices.

    A vertex is dropped when it sits within ``eps`` of its predecessor or
    of the segment joining its neighbours. Raises if fewer than three
    vertices survive.
    """
    if eps is None:
        eps = coord_tolerance(ring_extent(ring))
    pts = list(ring)
    changed = True
    while changed and len(pts) >= 3:
        changed = False
        # Duplicate pass first so the collinearity test sees distinct neighbours.
        out: list[Point] = []
        for p in pts:
            if out and math.dist(p, out[-1]) <= eps:
                changed = True
                continue
            out.append(p)
        if len(out) >= 2 and math.dist(out[0], out[-1]) <= eps:
            out.pop()
            changed = True
        pts = out
        if len(pts) < 3:
            break
        out = []
        n = len(pts)
        for i in range(n):
            a = pts[i - 1]
            b = pts[i]
            c = pts[(i + 1) % n]
            ax, ay = c[0] - a[0], c[1] - a[1]
            bx, by = b[0] - a[0], b[1] - a[1]
            cross = ax * by - ay * bx
            span = math.hypot(ax, ay)
            if span > 0 and abs(cross) / span <= eps:
                changed = True
                continue
            out.append(b)
        pts = out
    if len(pts) < 3:
        raise DegenerateGeometryError("ring degenerates to fewer than 3 vertices")
    return tuple(pts)


def region_area(region: PolygonRegion) -> float:
    """Net area: outer ring minus holes, windings ignored."""
    area = abs(ring_area(region.outer))
    for hole in region.holes:
        area -= abs(ring_area(hole))
    return area


def apply_transform(ring: Ring, transform: Transform) -> Ring:
    """Apply mirror, rotation and translation to every vertex.

    Mirror is about the vertical axis through the bounding-box centre and
    happens before the rotation, which is about the bounding-box centre;
    the translation is added last.
    """
    minx, miny, maxx, maxy = ring_bbox(ring)
    cx = (minx + maxx) / 2.0
    cy = (miny + maxy) / 2.0
    tx, ty = transform.translation
    out: list[Point] = []
    for x, y in ring:
        if transform.flipped:
            x = 2.0 * cx - x
        dx, dy = x - cx, y - cy
        if transform.rotation is Rotation.R0:
            rx, ry = dx, dy
        elif transform.rotation is Rotation.R90:
            rx, ry = -dy, dx
        elif transform.rotation is Rotation.R180:
            rx, ry = -dx, -dy
        else:
            rx, ry = dy, -dx
        out.append((cx + rx + tx, cy + ry + ty))
    return tuple(out)


def region_to_shapely(region: PolygonRegion) -> ShapelyPolygon:
    return ShapelyPolygon(region.outer, [list(h) for h in region.holes])


def _split_off_holes(poly: ShapelyPolygon) -> list[ShapelyPolygon]:
    """Cut a polygon with holes into hole-free polygons.

    Splits with a vertical line through the centre of the first hole's
    bounding box and recurses; each cut removes at least one hole.
    """
    if not poly.interiors:
        return [poly]
    minx, miny, maxx, maxy = poly.bounds
    hminx, _, hmaxx, _ = poly.interiors[0].bounds
    cut_x = (hminx + hmaxx) / 2.0
    pad = max(maxx - minx, maxy - miny, 1.0)
    left = poly.intersection(shapely_box(minx - pad, miny - pad, cut_x, maxy + pad))
    right = poly.intersection(shapely_box(cut_x, miny - pad, maxx + pad, maxy + pad))
    parts: list[ShapelyPolygon] = []
    for geom in (left, right):
        for sub in _iter_shapely_polygons(geom):
            parts.extend(_split_off_holes(sub))
    return parts


def _iter_shapely_polygons(geom) -> Iterator[ShapelyPolygon]:
    if geom.is_empty:
        return
    if isinstance(geom, ShapelyPolygon):
        yield geom
        return
    if hasattr(geom, "geoms"):
        for sub in geom.geoms:
            yield from _iter_shapely_polygons(sub)


def shapely_exterior_ring(poly: ShapelyPolygon, eps: float) -> Ring:
    ring = tuple(poly.exterior.coords)[:-1]
    return clean_ring(ensure_ccw(ring), eps)


def clip_rect(region: PolygonRegion, rect: Rect) -> list[PolygonRegion]:
    """Intersect an axis-aligned rectangle with the region.

    Returns hole-free polygons covering the intersection, empty when the
    intersection area is within tolerance of zero. Pieces below the area
    tolerance are dropped.
    """
    poly = region_to_shapely(region)
    tol = area_tolerance(region_area(region))
    eps = coord_tolerance(max(ring_extent(region.outer), rect.width, rect.height))
    cell = shapely_box(rect.x, rect.y, rect.x + rect.width, rect.y + rect.height)
    inter = poly.intersection(cell)
    pieces: list[PolygonRegion] = []
    for geom in _iter_shapely_polygons(inter):
        for part in _split_off_holes(geom):
            if part.area <= tol:
                continue
            pieces.append(PolygonRegion(outer=shapely_exterior_ring(part, eps)))
    return pieces


def rect_fully_inside(region: PolygonRegion, rect: Rect) -> bool:
    """True when the rectangle lies entirely within the region.

    Decided by intersection area so boundary contact counts as inside.
    """
    poly = region_to_shapely(region)
    cell = shapely_box(rect.x, rect.y, rect.x + rect.width, rect.y + rect.height)
    tol = area_tolerance(rect.area)
    return poly.intersection(cell).area >= rect.area - tol


# --- convex decomposition and overlap -----------------------------------

def _is_convex(ring: Ring, eps: float) -> bool:
    n = len(ring)
    for i in range(n):
        ax, ay = ring[i]
        bx, by = ring[(i + 1) % n]
        cx, cy = ring[(i + 2) % n]
        cross = (bx - ax) * (cy - by) - (by - ay) * (cx - bx)
        if cross < -eps:
            return False
    return True


def _point_in_triangle(p: Point, a: Point, b: Point, c: Point, eps: float) -> bool:
    # Strict interior test; boundary points do not block an ear.
    d1 = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])
    d2 = (c[0] - b[0]) * (p[1] - b[1]) - (c[1] - b[1]) * (p[0] - b[0])
    d3 = (a[0] - c[0]) * (p[1] - c[1]) - (a[1] - c[1]) * (p[0] - c[0])
    return d1 > eps and d2 > eps and d3 > eps


def _side(p: Point, q: Point, r: Point) -> float:
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def _proper_cross(p1: Point, q1: Point, p2: Point, q2: Point, eps: float) -> bool:
    """True when the open interiors of the two segments cross."""
    d1 = _side(p1, q1, p2)
    d2 = _side(p1, q1, q2)
    d3 = _side(p2, q2, p1)
    d4 = _side(p2, q2, q1)
    return (
        ((d1 > eps and d2 < -eps) or (d1 < -eps and d2 > eps))
        and ((d3 > eps and d4 < -eps) or (d3 < -eps and d4 > eps))
    )


def convex_parts(ring: Ring) -> tuple[Ring, ...] | None:
    """Split a counter-clockwise simple polygon into convex pieces.

    Convex input is returned whole; concave input is ear-clipped into
    triangles. Returns None when clipping stalls on degenerate input, in
    which case callers must fall back to an exact polygon test.
    """
    extent = ring_extent(ring)
    eps = coord_tolerance(extent)
    cross_eps = eps * max(extent, 1.0)
    ring = clean_ring(ensure_ccw(ring), eps)
    if _is_convex(ring, cross_eps):
        return (ring,)
    verts = list(ring)
    tris: list[Ring] = []
    while len(verts) > 3:
        n = len(verts)
        clipped = False
        for i in range(n):
            prev = (i - 1) % n
            nxt = (i + 1) % n
            a, b, c = verts[prev], verts[i], verts[nxt]
            cross = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0])
            if cross <= cross_eps:
                continue
            others = (verts[j] for j in range(n) if j not in (prev, i, nxt))
            if any(_point_in_triangle(p, a, b, c, cross_eps) for p in others):
                continue
            # A remaining edge may still slice through the ear even with no
            # vertex inside it (grazing a reflex corner exactly on the
            # diagonal); reject the ear when any non-adjacent edge properly
            # crosses one of its sides.
            if _ear_cut_by_edge(verts, prev, i, nxt, cross_eps):
                continue
            tris.append((a, b, c))
            del verts[i]
            clipped = True
            break
        if not clipped:
            return None
    final = tuple(verts)
    acc = 0.0
    for (x0, y0), (x1, y1) in _iter_edges(final):
        acc += x0 * y1 - x1 * y0
    # The last three vertices can be a zero-area sliver when earlier ear
    # diagonals ran along a straight chain; it contributes nothing.
    if acc / 2.0 > cross_eps:
        tris.append(final)
    return tuple(tris)


def _ear_cut_by_edge(verts: list[Point], prev: int, i: int, nxt: int, eps: float) -> bool:
    n = len(verts)
    a, b, c = verts[prev], verts[i], verts[nxt]
    sides = ((a, b), (b, c), (c, a))
    for j in range(n):
        if j in (prev, i):
            continue
        p, q = verts[j], verts[(j + 1) % n]
        for s0, s1 in sides:
            if _proper_cross(p, q, s0, s1, eps):
                return True
    return False


def _project_span(points: Iterable[Point], ax: float, ay: float) -> tuple[float, float]:
    lo = math.inf
    hi = -math.inf
    for x, y in points:
        d = x * ax + y * ay
        if d < lo:
            lo = d
        if d > hi:
            hi = d
    return lo, hi


def _convex_rings_overlap(a: Ring, b: Ring, eps: float) -> bool:
    """Separating-axis test; contact of depth <= eps does not count."""
    for ring, other in ((a, b), (b, a)):
        for p, q in _iter_edges(ring):
            ex, ey = q[0] - p[0], q[1] - p[1]
            length = math.hypot(ex, ey)
            if length == 0.0:
                continue
            ax, ay = -ey / length, ex / length
            lo1, hi1 = _project_span(ring, ax, ay)
            lo2, hi2 = _project_span(other, ax, ay)
            if min(hi1, hi2) - max(lo1, lo2) <= eps:
                return False
    return True


def pieces_overlap(a: Ring, b: Ring, eps: float | None = None) -> bool:
    """True when the polygon interiors overlap by more than ``eps``.

    Shared edges and corner contact are not overlap. Concave input is
    decomposed into convex parts first; if decomposition fails the test
    falls back to an exact area intersection.
    """
    if eps is None:
        eps = coord_tolerance(max(ring_extent(a), ring_extent(b)))
    aminx, aminy, amaxx, amaxy = ring_bbox(a)
    bminx, bminy, bmaxx, bmaxy = ring_bbox(b)
    if (
        min(amaxx, bmaxx) - max(aminx, bminx) <= eps
        or min(amaxy, bmaxy) - max(aminy, bminy) <= eps
    ):
        return False
    parts_a = convex_parts(a)
    parts_b = convex_parts(b)
    if parts_a is None or parts_b is None:
        inter = ShapelyPolygon(a).intersection(ShapelyPolygon(b))
        return inter.area > eps * max(ring_extent(a), ring_extent(b))
    for pa in parts_a:
        for pb in parts_b:
            if _convex_rings_overlap(pa, pb, eps):
                return True
    return False


# --- shared-edge metric --------------------------------------------------

def _collinear_overlap(
    p: Point, q: Point, r: Point, s: Point, eps: float
) -> tuple[float, float] | None:
    """Overlap interval of segment rs on segment pq, as distances from p.

    Requires rs to be collinear with pq within ``eps``; returns None for
    skew segments or overlaps shorter than ``eps``.
    """
    ux, uy = q[0] - p[0], q[1] - p[1]
    length = math.hypot(ux, uy)
    if length <= eps:
        return None
    ux /= length
    uy /= length
    off_r = abs(ux * (r[1] - p[1]) - uy * (r[0] - p[0]))
    off_s = abs(ux * (s[1] - p[1]) - uy * (s[0] - p[0]))
    if off_r > eps or off_s > eps:
        return None
    tr = ux * (r[0] - p[0]) + uy * (r[1] - p[1])
    ts = ux * (s[0] - p[0]) + uy * (s[1] - p[1])
    lo = max(0.0, min(tr, ts))
    hi = min(length, max(tr, ts))
    if hi - lo <= eps:
        return None
    return lo, hi


def _merged_interval_length(intervals: list[tuple[float, float]]) -> float:
    if not intervals:
        return 0.0
    intervals.sort()
    total = 0.0
    cur_lo, cur_hi = intervals[0]
    for lo, hi in intervals[1:]:
        if lo > cur_hi:
            total += cur_hi - cur_lo
            cur_lo, cur_hi = lo, hi
        elif hi > cur_hi:
            cur_hi = hi
    return total + (cur_hi - cur_lo)


def shared_edge_length(
    target: Ring,
    neighbours: Sequence[Ring],
    container: RectDim,
    eps: float | None = None,
) -> float:
    """Total length of the target's boundary lying on other boundaries.

    Counts coincidence with neighbour edges and with the container
    rectangle anchored at the origin. Overlapping coincidences on one
    target edge are merged so no stretch is counted twice.
    """
    if eps is None:
        eps = coord_tolerance(max(container.width, container.height))
    rim: Ring = (
        (0.0, 0.0),
        (container.width, 0.0),
        (container.width, container.height),
        (0.0, container.height),
    )
    other_edges = list(_iter_edges(rim))
    for nb in neighbours:
        other_edges.extend(_iter_edges(nb))
    total = 0.0
    for p, q in _iter_edges(target):
        intervals = []
        for r, s in other_edges:
            ov = _collinear_overlap(p, q, r, s, eps)
            if ov is not None:
                intervals.append(ov)
        total += _merged_interval_length(intervals)
    return total
