"""Shared test utilities: random geometry generators and shapely oracles.

Shapely serves as the independent reference implementation here; the
package's own predicates are exercised against it rather than against
themselves.
"""

from __future__ import annotations

import random

from shapely.geometry import Polygon as ShapelyPolygon
from shapely.geometry import box as shapely_box
from shapely.ops import unary_union

from panelplan.geometry import (
    PolygonRegion,
    Ring,
    clean_ring,
    ensure_ccw,
)


ACCEPTANCE_LINES: list[str] = []


def record_acceptance(number: int, passed: bool, detail: str) -> None:
    """Register one acceptance verdict; conftest echoes these after the run."""
    verdict = "pass" if passed else "fail"
    ACCEPTANCE_LINES.append(f"ACCEPTANCE {number} {verdict}: {detail}")


def rand_rectilinear_region(rng: random.Random, cell: float = 25.0) -> PolygonRegion:
    """Random rectilinear region built from a union of grid-aligned rectangles."""
    rects = []
    for _ in range(rng.randint(2, 5)):
        x0 = rng.randint(0, 6)
        y0 = rng.randint(0, 6)
        w = rng.randint(2, 5)
        h = rng.randint(2, 5)
        rects.append(shapely_box(x0 * cell, y0 * cell, (x0 + w) * cell, (y0 + h) * cell))
    merged = unary_union(rects)
    poly = max(_polygons(merged), key=lambda g: g.area)
    outer = clean_ring(ensure_ccw(tuple(poly.exterior.coords)[:-1]))
    holes = []
    for interior in poly.interiors:
        ring = clean_ring(ensure_ccw(tuple(interior.coords)[:-1]))
        holes.append(tuple(reversed(ring)))
    return PolygonRegion(outer=outer, holes=tuple(holes))


def rand_piece_ring(rng: random.Random) -> Ring:
    """Random small simple polygon: rectangle, right triangle or L-shape."""
    w = rng.uniform(1.0, 6.0)
    h = rng.uniform(1.0, 6.0)
    kind = rng.randrange(3)
    if kind == 0:
        ring: Ring = ((0.0, 0.0), (w, 0.0), (w, h), (0.0, h))
    elif kind == 1:
        ring = ((0.0, 0.0), (w, 0.0), (0.0, h))
    else:
        wx = w * rng.uniform(0.3, 0.7)
        hy = h * rng.uniform(0.3, 0.7)
        ring = ((0.0, 0.0), (w, 0.0), (w, hy), (wx, hy), (wx, h), (0.0, h))
    dx = rng.uniform(-5.0, 5.0)
    dy = rng.uniform(-5.0, 5.0)
    return tuple((x + dx, y + dy) for x, y in ring)


def overlap_oracle(a: Ring, b: Ring) -> bool:
    """Reference interior-overlap test via shapely intersection area."""
    inter = ShapelyPolygon(a).intersection(ShapelyPolygon(b))
    return inter.area > 1e-7


def region_oracle_area(region: PolygonRegion) -> float:
    return ShapelyPolygon(region.outer, [list(h) for h in region.holes]).area


def _polygons(geom):
    if isinstance(geom, ShapelyPolygon):
        return [geom]
    return [g for g in geom.geoms if isinstance(g, ShapelyPolygon)]


def iter_partitions(n: int):
    """All set partitions of range(n) via restricted growth strings."""

    def grow(prefix: list[int], used: int):
        i = len(prefix)
        if i == n:
            blocks: list[list[int]] = [[] for _ in range(used)]
            for pid, cluster in enumerate(prefix):
                blocks[cluster].append(pid)
            yield blocks
            return
        for cluster in range(used + 1):
            yield from grow(prefix + [cluster], max(used, cluster + 1))

    yield from grow([], 0)


def partition_chromosome(blocks, n: int):
    """Chromosome realising a partition, cluster IDs by block order."""
    from panelplan.encoding import Chromosome, block_width_for

    width = block_width_for(n)
    assignment = {}
    for cluster, block in enumerate(blocks):
        for pid in block:
            assignment[pid] = cluster
    bits: list[int] = []
    for pid in range(n):
        value = assignment[pid]
        bits.extend((value >> shift) & 1 for shift in range(width - 1, -1, -1))
    return Chromosome(bits=tuple(bits), piece_count=n)


def brute_force_optimum(pieces, panel, policy, strategy) -> float:
    """Exact best fitness over every way of clustering the pool."""
    from panelplan.encoding import Evaluator

    evaluator = Evaluator(pieces, panel, policy, strategy)
    best = float("inf")
    for blocks in iter_partitions(len(pieces)):
        fitness, _ = evaluator.evaluate(partition_chromosome(blocks, len(pieces)))
        best = min(best, fitness)
    return best
