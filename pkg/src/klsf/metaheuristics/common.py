"""Shared pieces for the metaheuristics: stopping rules, run records, timing."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from ..graph import LabeledGraph, LabelSubset


@dataclass(frozen=True)
class StoppingCondition:
    """Stop when any configured limit is reached.

    ``max_time`` is wall-clock seconds. ``max_idle_iterations`` counts
    iterations since the last improvement of the best solution.
    """

    max_time: float | None = None
    max_iterations: int | None = None
    max_idle_iterations: int | None = None

    def __post_init__(self):
        limits = (self.max_time, self.max_iterations, self.max_idle_iterations)
        if all(x is None for x in limits):
            raise ValueError("at least one stopping criterion must be set")
        if any(x is not None and x < 0 for x in limits):
            raise ValueError(f"stopping limits must be non-negative: {self}")

    def reached(self, elapsed: float, iterations: int, idle: int) -> bool:
        if self.max_time is not None and elapsed >= self.max_time:
            return True
        if self.max_iterations is not None and iterations >= self.max_iterations:
            return True
        if self.max_idle_iterations is not None and idle >= self.max_idle_iterations:
            return True
        return False


@dataclass
class RunRecord:
    algorithm: str
    seed: int | None
    best: LabelSubset
    objective: int
    labels_used: int
    time_to_best: float
    total_time: float
    iterations: int = 0
    history: list[tuple[float, int]] = field(default_factory=list, repr=False)


class Tracker:
    """Keeps the incumbent, the clock and the iteration counters of one run."""

    def __init__(self, algorithm: str, seed, stop: StoppingCondition):
        self.algorithm = algorithm
        self.seed = seed
        self.stop = stop
        self.start = time.perf_counter()
        self.best: LabelSubset | None = None
        self.time_to_best = 0.0
        self.iterations = 0
        self.idle = 0
        self.history: list[tuple[float, int]] = []

    def elapsed(self) -> float:
        return time.perf_counter() - self.start

    def done(self) -> bool:
        if self.best is not None and self.best.comp == 1:
            return True
        return self.stop.reached(self.elapsed(), self.iterations, self.idle)

    def offer(self, c: LabelSubset) -> bool:
        """Record ``c`` if it beats the incumbent on (components, labels)."""
        if self.best is None or c.key() < self.best.key():
            self.best = c.copy()
            self.time_to_best = self.elapsed()
            self.history.append((self.time_to_best, c.comp))
            return True
        return False

    def tick(self, improved: bool) -> None:
        self.iterations += 1
        self.idle = 0 if improved else self.idle + 1

    def record(self) -> RunRecord:
        return RunRecord(
            algorithm=self.algorithm,
            seed=self.seed,
            best=self.best,
            objective=self.best.comp,
            labels_used=len(self.best),
            time_to_best=self.time_to_best,
            total_time=self.elapsed(),
            iterations=self.iterations,
            history=self.history,
        )


def random_solution(g: LabeledGraph, k: int, rng: np.random.Generator, stop_connected=True):
    """Add uniformly random labels to an empty set until it holds ``k`` of them."""
    uf = g.union_find()
    c = LabelSubset()
    for lab in rng.permutation(g.label_count)[:k]:
        lab = int(lab) + 1
        for u, v in g.label_pairs[lab]:
            uf.union(u, v)
        c.add(lab)
        if stop_connected and uf.count == 1:
            break
    c.comp = uf.count
    return c
