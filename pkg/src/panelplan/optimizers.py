"""Search strategies over the cluster-assignment encoding.

Three solvers share one result shape: plain greedy nesting (no search),
Monte Carlo bit-flip search, and a generational genetic algorithm with
rank-weighted parent selection. Fitness is total vacant area, lower is
better, and the trace records every strict improvement so convergence
can be plotted and checked for monotonicity.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .encoding import Chromosome, Evaluator, random_chromosome
from .errors import ConfigurationError
from .geometry import RectDim
from .nesting import (
    NestingPlan,
    Piece,
    PlacementStrategy,
    TransformPolicy,
    greedy_nest,
)

__all__ = [
    "McConfig",
    "GaConfig",
    "OptimizationResult",
    "solve_greedy",
    "solve_mc",
    "solve_ga",
]


@dataclass(frozen=True)
class McConfig:
    """Monte Carlo search settings.

    Each iteration copies the best chromosome, picks up to ``max_flips``
    distinct bit positions (the whole string when None), flips each with
    ``flip_probability``, and keeps the mutant only on strict
    improvement.
    """

    iterations: int = 10_000
    max_flips: int | None = None
    flip_probability: float = 0.2
    seed: int = 0

    def validate(self) -> None:
        if self.iterations < 0:
            raise ConfigurationError(f"iterations must be >= 0, got {self.iterations}")
        if self.max_flips is not None and self.max_flips < 1:
            raise ConfigurationError(f"max_flips must be >= 1, got {self.max_flips}")
        if not 0.0 <= self.flip_probability <= 1.0:
            raise ConfigurationError(
                f"flip_probability must be in [0, 1], got {self.flip_probability}"
            )


@dataclass(frozen=True)
class GaConfig:
    """Genetic algorithm settings.

    Parents are drawn with linear rank weights (best rank weighted
    population, worst weighted 1), recombined by single-point crossover
    with ``crossover_probability`` and mutated per bit. With ``elitism``
    the reigning best chromosome replaces the first child of every new
    generation.
    """

    population: int = 100
    generations: int = 100
    crossover_probability: float = 0.6
    mutation_probability: float = 0.1
    elitism: bool = False
    seed: int = 0

    def validate(self) -> None:
        if self.population < 2 or self.population % 2:
            raise ConfigurationError(
                f"population must be even and >= 2, got {self.population}"
            )
        if self.generations < 0:
            raise ConfigurationError(
                f"generations must be >= 0, got {self.generations}"
            )
        for name in ("crossover_probability", "mutation_probability"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ConfigurationError(f"{name} must be in [0, 1], got {value}")


@dataclass(frozen=True)
class OptimizationResult:
    """Best plan found, its fitness, and the improvement trace.

    The trace holds ``(evaluation_index, best_fitness)`` pairs, one for
    the first evaluation and one per strict improvement, so the fitness
    column is non-increasing by construction.
    """

    best_plan: NestingPlan
    best_fitness: float
    trace: tuple[tuple[int, float], ...]
    evaluations: int


def solve_greedy(
    pieces: Sequence[Piece],
    panel: RectDim,
    policy: TransformPolicy,
    strategy: PlacementStrategy,
) -> OptimizationResult:
    """Deterministic baseline: one greedy nesting pass, no search."""
    plan = greedy_nest(pieces, panel, policy, strategy)
    fitness = plan.vacant_area
    return OptimizationResult(
        best_plan=plan,
        best_fitness=fitness,
        trace=((1, fitness),),
        evaluations=1,
    )


class _BestTracker:
    """Keeps the incumbent and appends to the trace on strict improvement."""

    def __init__(self) -> None:
        self.chromosome: Chromosome | None = None
        self.fitness = float("inf")
        self.plan: NestingPlan | None = None
        self.trace: list[tuple[int, float]] = []
        self.evaluations = 0

    def offer(self, chromosome: Chromosome, fitness: float, plan: NestingPlan) -> None:
        self.evaluations += 1
        if fitness < self.fitness:
            self.chromosome = chromosome
            self.fitness = fitness
            self.plan = plan
            self.trace.append((self.evaluations, fitness))

    def result(self) -> OptimizationResult:
        assert self.plan is not None
        return OptimizationResult(
            best_plan=self.plan,
            best_fitness=self.fitness,
            trace=tuple(self.trace),
            evaluations=self.evaluations,
        )


def solve_mc(
    pieces: Sequence[Piece],
    panel: RectDim,
    policy: TransformPolicy,
    strategy: PlacementStrategy,
    config: McConfig = McConfig(),
) -> OptimizationResult:
    """Monte Carlo search: mutate the incumbent, keep strict improvements."""
    config.validate()
    rng = random.Random(config.seed)
    evaluator = Evaluator(pieces, panel, policy, strategy)
    tracker = _BestTracker()
    start = random_chromosome(len(pieces), rng)
    fitness, plan = evaluator.evaluate(start)
    tracker.offer(start, fitness, plan)
    length = len(start.bits)
    flips = length if config.max_flips is None else min(config.max_flips, length)
    for _ in range(config.iterations):
        assert tracker.chromosome is not None
        bits = list(tracker.chromosome.bits)
        if flips >= length:
            positions: Sequence[int] = range(length)
        else:
            positions = rng.sample(range(length), flips)
        for pos in positions:
            if rng.random() < config.flip_probability:
                bits[pos] ^= 1
        candidate = Chromosome(bits=tuple(bits), piece_count=len(pieces))
        fitness, plan = evaluator.evaluate(candidate)
        tracker.offer(candidate, fitness, plan)
    return tracker.result()


def _crossover(
    a: Chromosome, b: Chromosome, rng: random.Random, probability: float
) -> tuple[list[int], list[int]]:
    bits_a = list(a.bits)
    bits_b = list(b.bits)
    length = len(bits_a)
    if length >= 2 and rng.random() < probability:
        point = rng.randint(1, length - 1)
        bits_a, bits_b = (
            bits_a[:point] + bits_b[point:],
            bits_b[:point] + bits_a[point:],
        )
    return bits_a, bits_b


def _mutate(bits: list[int], rng: random.Random, probability: float) -> None:
    for i in range(len(bits)):
        if rng.random() < probability:
            bits[i] ^= 1


def solve_ga(
    pieces: Sequence[Piece],
    panel: RectDim,
    policy: TransformPolicy,
    strategy: PlacementStrategy,
    config: GaConfig = GaConfig(),
) -> OptimizationResult:
    """Generational GA over chromosomes with rank-based parent selection."""
    config.validate()
    rng = random.Random(config.seed)
    evaluator = Evaluator(pieces, panel, policy, strategy)
    tracker = _BestTracker()

    def evaluate_all(generation: list[Chromosome]) -> list[float]:
        fits = []
        for chromosome in generation:
            fitness, plan = evaluator.evaluate(chromosome)
            tracker.offer(chromosome, fitness, plan)
            fits.append(fitness)
        return fits

    population = [random_chromosome(len(pieces), rng) for _ in range(config.population)]
    fitnesses = evaluate_all(population)
    rank_weights = [config.population - r for r in range(config.population)]
    for _ in range(config.generations):
        order = sorted(range(config.population), key=lambda i: fitnesses[i])
        ranked = [population[i] for i in order]
        children: list[Chromosome] = []
        while len(children) < config.population:
            parent_a, parent_b = rng.choices(ranked, weights=rank_weights, k=2)
            bits_a, bits_b = _crossover(
                parent_a, parent_b, rng, config.crossover_probability
            )
            _mutate(bits_a, rng, config.mutation_probability)
            _mutate(bits_b, rng, config.mutation_probability)
            children.append(Chromosome(bits=tuple(bits_a), piece_count=len(pieces)))
            children.append(Chromosome(bits=tuple(bits_b), piece_count=len(pieces)))
        if config.elitism and tracker.chromosome is not None:
            children[0] = tracker.chromosome
        population = children
        fitnesses = evaluate_all(population)
    return tracker.result()
