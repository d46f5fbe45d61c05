"""GRASP: randomised greedy construction followed by local search."""

from __future__ import annotations

import numpy as np

from ..constructive import GreedyTieRule, mvca_extend
from ..graph import LabeledGraph, LabelSubset
from .bvns import local_search
from .common import RunRecord, StoppingCondition, Tracker


def grasp_construct(g: LabeledGraph, k: int, rng: np.random.Generator) -> LabelSubset:
    """First label uniformly at random; then uniform picks among the labels
    yielding the fewest components."""
    first = int(rng.integers(g.label_count)) + 1
    return mvca_extend(g, LabelSubset([first]), g.labels, k, GreedyTieRule(rng))


def grasp(
    g: LabeledGraph,
    k: int,
    stop: StoppingCondition = StoppingCondition(max_time=60.0),
    seed: int | None = None,
) -> RunRecord:
    if k < 1:
        raise ValueError(f"budget k must be >= 1, got {k}")
    rng = np.random.default_rng(seed)
    run = Tracker("grasp", seed, stop)
    while True:
        improved = run.offer(local_search(g, grasp_construct(g, k, rng), k, rng))
        run.tick(improved)
        if run.done():
            break
    return run.record()
