"""Greedy label-by-label construction (MVCA adapted to a label budget)."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from .graph import LabeledGraph, LabelSubset, evaluate


@dataclass(frozen=True)
class GreedyTieRule:
    """How the greedy step chooses among labels with the same minimum count.

    With no generator the lowest label id wins; otherwise the choice is
    uniform among all minimisers.
    """

    rng: np.random.Generator | None = None

    @classmethod
    def random(cls, seed: int | np.random.Generator | None = None) -> GreedyTieRule:
        return cls(np.random.default_rng(seed))

    @property
    def randomized(self) -> bool:
        return self.rng is not None

    def pick(self, minimizers: list[int]) -> int:
        if self.rng is None or len(minimizers) == 1:
            return minimizers[0]
        return minimizers[int(self.rng.integers(len(minimizers)))]


FIRST_MIN = GreedyTieRule()


def best_additions(
    g: LabeledGraph, current: Iterable[int], candidates: Iterable[int]
) -> tuple[int, list[int]]:
    """Minimum component count reachable by adding one candidate, and the sorted minimisers."""
    uf = g.union_find(current)
    roots = uf.roots()
    best = None
    minimizers: list[int] = []
    for lab in candidates:
        comp = g.comp_after_adding(roots, uf.count, lab)
        if best is None or comp < best:
            best, minimizers = comp, [lab]
        elif comp == best:
            minimizers.append(lab)
    return best, minimizers


def mvca_extend(
    g: LabeledGraph,
    c: LabelSubset,
    pool: Iterable[int],
    k: int,
    tie: GreedyTieRule = FIRST_MIN,
) -> LabelSubset:
    """Greedily add labels from ``pool`` to a copy of ``c``.

    Each step adds the label that leaves the fewest components. Stops once the
    subset holds ``k`` labels, the graph is connected, or the pool is used up;
    in the last case the partial subset is returned as is.
    """
    if len(c) > k:
        raise ValueError(f"subset already has {len(c)} labels, budget is {k}")
    out = c.copy()
    evaluate(g, out)
    remaining = sorted(set(pool) - out.members)
    uf = g.union_find(out.members)
    while len(out) < k and uf.count > 1 and remaining:
        roots = uf.roots()
        best = None
        minimizers: list[int] = []
        for lab in remaining:
            comp = g.comp_after_adding(roots, uf.count, lab)
            if best is None or comp < best:
                best, minimizers = comp, [lab]
            elif comp == best:
                minimizers.append(lab)
        chosen = tie.pick(minimizers)
        remaining.remove(chosen)
        for u, v in g.label_pairs[chosen]:
            uf.union(u, v)
        out.add(chosen)
        out.comp = uf.count
    return out


def mvca(g: LabeledGraph, k: int, tie: GreedyTieRule = FIRST_MIN) -> LabelSubset:
    if k < 1:
        raise ValueError(f"budget k must be >= 1, got {k}")
    return mvca_extend(g, LabelSubset(), g.labels, k, tie)
