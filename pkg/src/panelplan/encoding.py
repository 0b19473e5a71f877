"""Cluster-assignment encoding of a nesting solution.

A candidate solution is a bit string with one fixed-width block per
piece; the block's value, read big-endian, is the cluster the piece
belongs to. Pieces sharing a cluster are meant to share a container.
Decoding packs each cluster into one container in descending area
order; whatever fails to fit spills into a common overflow pool that is
greedily nested onto extra containers at the end. Fitness is the total
vacant area across the containers used, so fewer containers is always
better and ties favour denser packing.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .errors import ConfigurationError, InfeasiblePieceError
from .geometry import RectDim, area_tolerance
from .nesting import (
    ContainerState,
    NestingPlan,
    Piece,
    PlacementStrategy,
    TransformPolicy,
    greedy_nest,
    try_place,
)

__all__ = [
    "Chromosome",
    "block_width_for",
    "decode",
    "random_chromosome",
    "evaluate",
    "Evaluator",
]


def block_width_for(piece_count: int) -> int:
    """Bits per cluster-ID block: enough to address one cluster per piece."""
    if piece_count <= 0:
        raise ConfigurationError(f"piece count must be positive, got {piece_count}")
    return max(1, (piece_count - 1).bit_length())


@dataclass(frozen=True)
class Chromosome:
    """Fixed-length bit string assigning every piece a cluster ID."""

    bits: tuple[int, ...]
    piece_count: int

    def __post_init__(self) -> None:
        width = block_width_for(self.piece_count)
        if len(self.bits) != self.piece_count * width:
            raise ConfigurationError(
                f"chromosome needs {self.piece_count * width} bits "
                f"({self.piece_count} pieces x {width}), got {len(self.bits)}"
            )
        if any(b not in (0, 1) for b in self.bits):
            raise ConfigurationError("chromosome bits must be 0 or 1")

    @property
    def block_width(self) -> int:
        return block_width_for(self.piece_count)

    def cluster_of(self, piece_id: int) -> int:
        width = self.block_width
        value = 0
        for bit in self.bits[piece_id * width : (piece_id + 1) * width]:
            value = (value << 1) | bit
        return value


def decode(chromosome: Chromosome) -> dict[int, list[int]]:
    """Cluster ID to member piece IDs, members ascending."""
    clusters: dict[int, list[int]] = {}
    for pid in range(chromosome.piece_count):
        clusters.setdefault(chromosome.cluster_of(pid), []).append(pid)
    return clusters


def random_chromosome(piece_count: int, rng: random.Random) -> Chromosome:
    width = block_width_for(piece_count)
    bits = tuple(rng.randrange(2) for _ in range(piece_count * width))
    return Chromosome(bits=bits, piece_count=piece_count)


class Evaluator:
    """Decodes chromosomes into nesting plans, with memoisation.

    The same cluster (as a set of piece IDs) packs to the same container
    no matter which chromosome produced it, and the same overflow pool
    nests the same way, so both are cached. Cached or not, every call
    counts as one evaluation.
    """

    def __init__(
        self,
        pieces: Sequence[Piece],
        panel: RectDim,
        policy: TransformPolicy,
        strategy: PlacementStrategy,
    ) -> None:
        if not pieces:
            raise ConfigurationError("cannot evaluate over an empty piece pool")
        ids = sorted(p.id for p in pieces)
        if ids != list(range(len(pieces))):
            raise ConfigurationError(
                f"piece ids must be 0..{len(pieces) - 1} with no gaps, got {ids}"
            )
        self.pieces = {p.id: p for p in pieces}
        self.panel = panel
        self.policy = policy
        self.strategy = strategy
        self.evaluations = 0
        self._total_area = sum(p.area for p in pieces)
        self._tol = area_tolerance(panel.area)
        self._cluster_cache: dict[tuple[int, ...], tuple[ContainerState, tuple[int, ...]]] = {}
        self._overflow_cache: dict[tuple[int, ...], tuple[ContainerState, ...]] = {}
        self._chromosome_cache: dict[tuple[int, ...], tuple[float, NestingPlan]] = {}

    def evaluate(self, chromosome: Chromosome) -> tuple[float, NestingPlan]:
        """Fitness (total vacant area, lower is better) and the plan behind it."""
        if chromosome.piece_count != len(self.pieces):
            raise ConfigurationError(
                f"chromosome is for {chromosome.piece_count} pieces, "
                f"pool has {len(self.pieces)}"
            )
        self.evaluations += 1
        cached = self._chromosome_cache.get(chromosome.bits)
        if cached is not None:
            return cached
        containers: list[ContainerState] = []
        overflow: list[int] = []
        clusters = decode(chromosome)
        for cluster_id in sorted(clusters):
            members = tuple(clusters[cluster_id])
            container, spilled = self._pack_cluster(members)
            containers.append(container)
            overflow.extend(spilled)
        if overflow:
            containers.extend(self._nest_overflow(tuple(sorted(overflow))))
        plan = NestingPlan(panel=self.panel, containers=tuple(containers))
        fitness = len(containers) * self.panel.area - self._total_area
        result = (fitness, plan)
        self._chromosome_cache[chromosome.bits] = result
        return result

    def _pack_cluster(
        self, members: tuple[int, ...]
    ) -> tuple[ContainerState, tuple[int, ...]]:
        cached = self._cluster_cache.get(members)
        if cached is not None:
            return cached
        order = sorted(members, key=lambda pid: (-self.pieces[pid].area, pid))
        container = ContainerState(self.panel)
        spilled: list[int] = []
        for pid in order:
            piece = self.pieces[pid]
            if piece.area > container.vacant_area + self._tol:
                spilled.append(pid)
                continue
            result = try_place(container, piece, self.policy, self.strategy)
            if result is None:
                if not container.placements:
                    raise InfeasiblePieceError(pid)
                spilled.append(pid)
            else:
                container.place(piece, result[0])
        record = (container, tuple(spilled))
        self._cluster_cache[members] = record
        return record

    def _nest_overflow(self, pool: tuple[int, ...]) -> tuple[ContainerState, ...]:
        cached = self._overflow_cache.get(pool)
        if cached is not None:
            return cached
        plan = greedy_nest(
            [self.pieces[pid] for pid in pool], self.panel, self.policy, self.strategy
        )
        self._overflow_cache[pool] = plan.containers
        return plan.containers


def evaluate(
    chromosome: Chromosome,
    pieces: Sequence[Piece],
    panel: RectDim,
    policy: TransformPolicy,
    strategy: PlacementStrategy,
) -> tuple[float, NestingPlan]:
    """One-shot evaluation without a shared cache."""
    return Evaluator(pieces, panel, policy, strategy).evaluate(chromosome)
