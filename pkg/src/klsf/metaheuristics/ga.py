"""Genetic algorithm over label subsets with greedy crossover."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..constructive import FIRST_MIN, mvca_extend
from ..graph import LabeledGraph, LabelSubset, comp_count
from .common import RunRecord, StoppingCondition, Tracker, random_solution


@dataclass(frozen=True)
class GaConfig:
    population_size: int = 40
    generations: int | None = None

    def __post_init__(self):
        if self.population_size < 2:
            raise ValueError(f"population_size must be >= 2, got {self.population_size}")
        if self.generations is not None and self.generations < 1:
            raise ValueError(f"generations must be >= 1, got {self.generations}")

    @property
    def n_generations(self) -> int:
        if self.generations is not None:
            return self.generations
        return max(1, self.population_size // 2)


def crossover(g: LabeledGraph, p1: LabelSubset, p2: LabelSubset, k: int) -> LabelSubset:
    """Single child: greedy construction restricted to the parents' union."""
    return mvca_extend(g, LabelSubset(), p1.members | p2.members, k, FIRST_MIN)


def mutate(g: LabeledGraph, c: LabelSubset, rng: np.random.Generator) -> LabelSubset:
    """Add one random unused label, then drop whichever label leaves the fittest set."""
    unused = [lab for lab in g.labels if lab not in c]
    if not unused:
        return c.copy()
    grown = c.copy()
    grown.add(unused[int(rng.integers(len(unused)))])
    best = None
    for lab in grown.sorted():
        trial = grown.copy()
        trial.remove(lab)
        comp_count(g, trial)
        if best is None or trial.key() < best.key():
            best = trial
    return best


def ga(
    g: LabeledGraph,
    k: int,
    cfg: GaConfig = GaConfig(),
    stop: StoppingCondition = StoppingCondition(max_time=60.0),
    seed: int | None = None,
) -> RunRecord:
    """Each individual is crossed with its successor in the population (cyclically);
    the mutated child replaces the first parent only if strictly fitter."""
    if k < 1:
        raise ValueError(f"budget k must be >= 1, got {k}")
    rng = np.random.default_rng(seed)
    run = Tracker("ga", seed, stop)
    population = []
    for _ in range(cfg.population_size):
        ind = random_solution(g, k, rng, stop_connected=False)
        population.append(ind)
        run.offer(ind)

    size = len(population)
    for _ in range(cfg.n_generations):
        if run.done():
            break
        parents = list(population)
        for i in range(size):
            if run.done():
                break
            child = mutate(g, crossover(g, parents[i], parents[(i + 1) % size], k), rng)
            if child.key() < parents[i].key():
                population[i] = child
            run.tick(run.offer(child))
    return run.record()
