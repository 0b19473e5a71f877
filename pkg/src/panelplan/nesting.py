"""Nesting of irregular off-cut pieces into rectangular containers.

A container is one stock panel with its bottom-left corner at the
origin. Pieces are placed one at a time: candidate positions are the
container origin plus every vertex of every placed piece, tried in
bottom-to-top, left-to-right order against each permitted orientation
(rotations allowed by the policy, then the mirrored forms). A placement
is legal when the piece stays on the panel and overlaps nothing.

Placement geometry per piece orientation is precomputed once (bounding
box, convex decomposition, separating-axis data) so the inner overlap
check touches no trigonometry and no shapely.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

from shapely.geometry import Polygon as ShapelyPolygon

from .errors import InfeasiblePieceError
from .geometry import (
    Point,
    RectDim,
    Ring,
    Rotation,
    Transform,
    apply_transform,
    area_tolerance,
    clean_ring,
    convex_parts,
    coord_tolerance,
    ensure_ccw,
    pieces_overlap,
    ring_area,
    ring_bbox,
    shared_edge_length,
)

__all__ = [
    "RotationMode",
    "PlacementStrategy",
    "TransformPolicy",
    "Piece",
    "Placement",
    "ContainerState",
    "NestingPlan",
    "PlanMetrics",
    "candidate_anchors",
    "try_place",
    "greedy_nest",
    "plan_metrics",
    "verify_plan",
]


class RotationMode(str, Enum):
    """Which quarter-turn rotations a placement may use."""

    NONE = "none"
    R180 = "r180"
    R90 = "r90"

    def rotations(self) -> tuple[Rotation, ...]:
        if self is RotationMode.NONE:
            return (Rotation.R0,)
        if self is RotationMode.R180:
            return (Rotation.R0, Rotation.R180)
        return (Rotation.R0, Rotation.R90, Rotation.R180, Rotation.R270)


class PlacementStrategy(str, Enum):
    """How to pick among legal candidate placements.

    FIRST_FIT takes the first legal candidate in enumeration order;
    BEST_FIT scores every candidate by shared-edge length and takes the
    highest, earlier candidates winning ties.
    """

    FIRST_FIT = "first-fit"
    BEST_FIT = "best-fit"


@dataclass(frozen=True)
class TransformPolicy:
    """Orientation freedom granted to the nesting stage."""

    rotation: RotationMode = RotationMode.R90
    allow_flip: bool = True

    def flip_states(self) -> tuple[bool, ...]:
        return (False, True) if self.allow_flip else (False,)


@dataclass(frozen=True)
class _ConvexPart:
    verts: Ring
    axes: tuple[tuple[float, float], ...]
    spans: tuple[tuple[float, float], ...]
    bbox: tuple[float, float, float, float]


@dataclass(frozen=True)
class _Variant:
    """One orientation of a piece, normalised so its bbox sits at the origin."""

    verts: Ring
    width: float
    height: float
    shift: Point
    parts: tuple[_ConvexPart, ...] | None
    is_rect: bool


def _make_part(ring: Ring) -> _ConvexPart:
    axes = []
    spans = []
    n = len(ring)
    for i in range(n):
        x0, y0 = ring[i]
        x1, y1 = ring[(i + 1) % n]
        ex, ey = x1 - x0, y1 - y0
        length = math.hypot(ex, ey)
        if length == 0.0:
            continue
        ux, uy = -ey / length, ex / length
        lo = math.inf
        hi = -math.inf
        for x, y in ring:
            d = x * ux + y * uy
            lo = min(lo, d)
            hi = max(hi, d)
        axes.append((ux, uy))
        spans.append((lo, hi))
    return _ConvexPart(
        verts=ring,
        axes=tuple(axes),
        spans=tuple(spans),
        bbox=ring_bbox(ring),
    )


def _build_variant(shape: Ring, rotation: Rotation, flipped: bool) -> _Variant:
    raw = apply_transform(shape, Transform(rotation=rotation, flipped=flipped))
    minx, miny, maxx, maxy = ring_bbox(raw)
    verts = tuple((x - minx, y - miny) for x, y in raw)
    rings = convex_parts(ensure_ccw(verts))
    parts = None if rings is None else tuple(_make_part(r) for r in rings)
    is_rect = False
    if parts is not None and len(parts) == 1 and len(parts[0].verts) == 4:
        eps = coord_tolerance(max(maxx - minx, maxy - miny))
        is_rect = all(
            abs(q[0] - p[0]) <= eps or abs(q[1] - p[1]) <= eps
            for p, q in zip(parts[0].verts, parts[0].verts[1:] + parts[0].verts[:1])
        )
    return _Variant(
        verts=verts,
        width=maxx - minx,
        height=maxy - miny,
        shift=(-minx, -miny),
        parts=parts,
        is_rect=is_rect,
    )


@dataclass(eq=False)
class Piece:
    """An irregular off-cut in its own local frame (bbox at the origin)."""

    id: int
    shape: Ring
    area: float
    _variants: dict[tuple[Rotation, bool], _Variant] = field(
        default_factory=dict, repr=False
    )

    @classmethod
    def from_ring(cls, piece_id: int, ring: Ring) -> "Piece":
        ring = clean_ring(ensure_ccw(ring))
        minx, miny, _, _ = ring_bbox(ring)
        local = tuple((x - minx, y - miny) for x, y in ring)
        return cls(id=piece_id, shape=local, area=ring_area(local))

    def variant(self, rotation: Rotation, flipped: bool) -> _Variant:
        key = (rotation, flipped)
        cached = self._variants.get(key)
        if cached is None:
            cached = _build_variant(self.shape, rotation, flipped)
            self._variants[key] = cached
        return cached


@dataclass(frozen=True)
class Placement:
    piece_id: int
    transform: Transform
    polygon: Ring


class ContainerState:
    """One open stock panel and everything placed on it so far."""

    __slots__ = ("panel", "placements", "placed_area", "eps", "_geoms")

    def __init__(self, panel: RectDim) -> None:
        self.panel = panel
        self.placements: list[Placement] = []
        self.placed_area = 0.0
        self.eps = coord_tolerance(max(panel.width, panel.height))
        self._geoms: list[tuple[_Variant, Point]] = []

    @property
    def vacant_area(self) -> float:
        return self.panel.area - self.placed_area

    def place(self, piece: Piece, transform: Transform) -> Placement:
        v = piece.variant(transform.rotation, transform.flipped)
        offset = (
            transform.translation[0] - v.shift[0],
            transform.translation[1] - v.shift[1],
        )
        ring = tuple((x + offset[0], y + offset[1]) for x, y in v.verts)
        placement = Placement(piece_id=piece.id, transform=transform, polygon=ring)
        self.placements.append(placement)
        self._geoms.append((v, offset))
        self.placed_area += piece.area
        return placement


def candidate_anchors(container: ContainerState) -> list[Point]:
    """Anchor points for the next placement: origin plus placed vertices.

    Deduplicated and ordered bottom-to-top then left-to-right so lower
    positions are always tried first.
    """
    seen: set[Point] = {(0.0, 0.0)}
    for placement in container.placements:
        seen.update(placement.polygon)
    return sorted(seen, key=lambda p: (p[1], p[0]))


def _parts_collide(
    pa: _ConvexPart, offa: Point, pb: _ConvexPart, offb: Point, eps: float
) -> bool:
    axo, ayo = offa
    bxo, byo = offb
    for (ux, uy), (lo, hi) in zip(pa.axes, pa.spans):
        base = ux * axo + uy * ayo
        alo, ahi = lo + base, hi + base
        blo = math.inf
        bhi = -math.inf
        for x, y in pb.verts:
            d = ux * (x + bxo) + uy * (y + byo)
            blo = min(blo, d)
            bhi = max(bhi, d)
        if min(ahi, bhi) - max(alo, blo) <= eps:
            return False
    for (ux, uy), (lo, hi) in zip(pb.axes, pb.spans):
        base = ux * bxo + uy * byo
        blo, bhi = lo + base, hi + base
        alo = math.inf
        ahi = -math.inf
        for x, y in pa.verts:
            d = ux * (x + axo) + uy * (y + ayo)
            alo = min(alo, d)
            ahi = max(ahi, d)
        if min(ahi, bhi) - max(alo, blo) <= eps:
            return False
    return True


def _variants_collide(
    va: _Variant, offa: Point, vb: _Variant, offb: Point, eps: float
) -> bool:
    ax, ay = offa
    bx, by = offb
    if min(ax + va.width, bx + vb.width) - max(ax, bx) <= eps:
        return False
    if min(ay + va.height, by + vb.height) - max(ay, by) <= eps:
        return False
    if va.is_rect and vb.is_rect:
        return True
    if va.parts is None or vb.parts is None:
        a = ShapelyPolygon((x + ax, y + ay) for x, y in va.verts)
        b = ShapelyPolygon((x + bx, y + by) for x, y in vb.verts)
        return a.intersection(b).area > eps * max(va.width, va.height, vb.width, vb.height)
    for pa in va.parts:
        pminx, pminy, pmaxx, pmaxy = pa.bbox
        for pb in vb.parts:
            qminx, qminy, qmaxx, qmaxy = pb.bbox
            if min(pmaxx + ax, qmaxx + bx) - max(pminx + ax, qminx + bx) <= eps:
                continue
            if min(pmaxy + ay, qmaxy + by) - max(pminy + ay, qminy + by) <= eps:
                continue
            if _parts_collide(pa, offa, pb, offb, eps):
                return True
    return False


def try_place(
    container: ContainerState,
    piece: Piece,
    policy: TransformPolicy,
    strategy: PlacementStrategy,
) -> tuple[Transform, float] | None:
    """Find a legal placement for the piece, or None.

    Enumerates anchors (sorted), then rotations in policy order, then the
    unmirrored before the mirrored form. FIRST_FIT returns the first
    legal candidate; BEST_FIT scans them all and keeps the one with the
    longest shared-edge contact, earlier candidates winning ties. The
    returned score is the placement's shared-edge length either way.
    """
    panel = container.panel
    eps = container.eps
    variants = [
        (rot, fl, piece.variant(rot, fl))
        for rot in policy.rotation.rotations()
        for fl in policy.flip_states()
    ]
    neighbour_rings = [p.polygon for p in container.placements]
    best: tuple[float, Transform] | None = None
    for ax, ay in candidate_anchors(container):
        for rot, fl, v in variants:
            if ax + v.width > panel.width + eps or ay + v.height > panel.height + eps:
                continue
            if any(
                _variants_collide(v, (ax, ay), pv, poff, eps)
                for pv, poff in container._geoms
            ):
                continue
            transform = Transform(
                rotation=rot,
                flipped=fl,
                translation=(ax + v.shift[0], ay + v.shift[1]),
            )
            ring = tuple((x + ax, y + ay) for x, y in v.verts)
            score = shared_edge_length(ring, neighbour_rings, panel, eps)
            if strategy is PlacementStrategy.FIRST_FIT:
                return transform, score
            if best is None or score > best[0]:
                best = (score, transform)
    if best is None:
        return None
    return best[1], best[0]


@dataclass(frozen=True)
class NestingPlan:
    panel: RectDim
    containers: tuple[ContainerState, ...]

    @property
    def placed_area(self) -> float:
        return sum(c.placed_area for c in self.containers)

    @property
    def vacant_area(self) -> float:
        return len(self.containers) * self.panel.area - self.placed_area


def greedy_nest(
    pieces: Sequence[Piece],
    panel: RectDim,
    policy: TransformPolicy,
    strategy: PlacementStrategy,
) -> NestingPlan:
    """Pack all pieces, opening a fresh container whenever nothing fits.

    The pool is kept sorted by descending area (piece id breaking ties);
    after each successful placement the scan restarts from the largest
    remaining piece, so a piece skipped earlier for lack of room gets
    another look once smaller pieces have filled gaps. Pieces whose area
    exceeds the remaining vacancy are skipped without a placement
    attempt.
    """
    pool = sorted(pieces, key=lambda p: (-p.area, p.id))
    tol = area_tolerance(panel.area)
    containers: list[ContainerState] = []
    while pool:
        container = ContainerState(panel)
        while True:
            placed_index: int | None = None
            for i, piece in enumerate(pool):
                if piece.area > container.vacant_area + tol:
                    continue
                result = try_place(container, piece, policy, strategy)
                if result is not None:
                    container.place(piece, result[0])
                    placed_index = i
                    break
            if placed_index is None:
                break
            pool.pop(placed_index)
        if not container.placements:
            raise InfeasiblePieceError(pool[0].id)
        containers.append(container)
    return NestingPlan(panel=panel, containers=tuple(containers))


@dataclass(frozen=True)
class PlanMetrics:
    panel_count: int
    placed_area: float
    vacant_area: float
    efficiency: float
    shared_edge_total: float


def plan_metrics(plan: NestingPlan) -> PlanMetrics:
    """Aggregate usage metrics for a finished plan.

    Efficiency is placed area over total panel area, defined as 1.0 for
    an empty plan. The shared-edge total scores each placement against
    the pieces placed before it in the same container plus the container
    rim, so no contact is counted twice.
    """
    panel_count = len(plan.containers)
    placed = plan.placed_area
    shared = 0.0
    for container in plan.containers:
        rings = [p.polygon for p in container.placements]
        for i, ring in enumerate(rings):
            shared += shared_edge_length(ring, rings[:i], plan.panel, container.eps)
    capacity = panel_count * plan.panel.area
    return PlanMetrics(
        panel_count=panel_count,
        placed_area=placed,
        vacant_area=capacity - placed,
        efficiency=1.0 if panel_count == 0 else placed / capacity,
        shared_edge_total=shared,
    )


def verify_plan(plan: NestingPlan, pieces: Iterable[Piece]) -> list[str]:
    """Check a plan against the placement rules; returns violation messages.

    Verifies that every piece appears exactly once, each placed polygon
    matches its declared transform, nothing leaves the panel and no two
    placements on a container overlap.
    """
    by_id = {p.id: p for p in pieces}
    violations: list[str] = []
    seen: set[int] = set()
    for ci, container in enumerate(plan.containers):
        eps = container.eps
        polys = container.placements
        for pi, placement in enumerate(polys):
            piece = by_id.get(placement.piece_id)
            if piece is None:
                violations.append(f"container {ci}: unknown piece {placement.piece_id}")
                continue
            if placement.piece_id in seen:
                violations.append(f"piece {placement.piece_id} placed more than once")
            seen.add(placement.piece_id)
            expect = apply_transform(piece.shape, placement.transform)
            if any(
                math.dist(p, q) > eps for p, q in zip(expect, placement.polygon)
            ):
                violations.append(
                    f"container {ci}: piece {placement.piece_id} polygon does not "
                    f"match its transform"
                )
            minx, miny, maxx, maxy = ring_bbox(placement.polygon)
            if minx < -eps or miny < -eps or maxx > plan.panel.width + eps or maxy > plan.panel.height + eps:
                violations.append(
                    f"container {ci}: piece {placement.piece_id} leaves the panel"
                )
            for other in polys[:pi]:
                if pieces_overlap(placement.polygon, other.polygon, eps):
                    violations.append(
                        f"container {ci}: pieces {other.piece_id} and "
                        f"{placement.piece_id} overlap"
                    )
    missing = set(by_id) - seen
    if missing:
        violations.append(f"pieces never placed: {sorted(missing)}")
    return violations
