"""Basic variable neighbourhood search with Hamming-distance neighbourhoods."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..constructive import GreedyTieRule, mvca_extend
from ..graph import LabeledGraph, LabelSubset, evaluate
from .common import RunRecord, StoppingCondition, Tracker, random_solution


class QmaxKind(enum.Enum):
    FIXED = "fixed"
    PROPORTIONAL_TO_K = "k"
    PROPORTIONAL_TO_SOLUTION = "sol"


def as_fraction(alpha) -> Fraction:
    """Parse ``"4/3"``, ``0.5`` or ``Fraction`` without binary float artefacts."""
    if isinstance(alpha, Fraction):
        return alpha
    if isinstance(alpha, float):
        return Fraction(repr(alpha))
    return Fraction(str(alpha).strip())


@dataclass(frozen=True)
class QmaxStrategy:
    """Rule for the largest shaking amplitude: ``alpha``, ``alpha*k`` or ``alpha*|C|``."""

    kind: QmaxKind = QmaxKind.PROPORTIONAL_TO_SOLUTION
    alpha: Fraction = Fraction(4, 3)

    def __post_init__(self):
        object.__setattr__(self, "kind", QmaxKind(self.kind))
        object.__setattr__(self, "alpha", as_fraction(self.alpha))
        if self.alpha <= 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")

    @property
    def name(self) -> str:
        return f"{self.kind.value}-{self.alpha}"


DEFAULT_STRATEGY = QmaxStrategy()

# The fifteen variants compared when tuning the amplitude.
STRATEGY_GRID = (
    [QmaxStrategy(QmaxKind.FIXED, a) for a in (5, 10, 15, 20, 25)]
    + [QmaxStrategy(QmaxKind.PROPORTIONAL_TO_K, a) for a in ("0.1", "0.3", "0.5", "0.7", "0.9")]
    + [
        QmaxStrategy(QmaxKind.PROPORTIONAL_TO_SOLUTION, Fraction(a, 3))
        for a in (1, 2, 3, 4, 5)
    ]
)


def qmax_eval(s: QmaxStrategy, k: int, current_size: int) -> int:
    if current_size < 0:
        raise ValueError(f"current_size must be >= 0, got {current_size}")
    if s.kind is QmaxKind.FIXED:
        value = s.alpha
    elif s.kind is QmaxKind.PROPORTIONAL_TO_K:
        value = s.alpha * k
    else:
        value = s.alpha * current_size
    return max(1, math.ceil(value))


def shake(g: LabeledGraph, c: LabelSubset, q: int, rng: np.random.Generator) -> LabelSubset:
    """Random solution at Hamming distance exactly ``q`` from ``c``.

    Removes ``min(q, |c|)`` random labels of ``c``; any remaining amplitude is
    spent adding random labels that were not in ``c``.
    """
    if not 1 <= q <= g.label_count:
        raise ValueError(f"amplitude q={q} outside [1, {g.label_count}]")
    original = c.sorted()
    out = c.copy()
    removable = list(original)
    for i in range(1, q + 1):
        if i <= len(original):
            lab = removable.pop(int(rng.integers(len(removable))))
            out.remove(lab)
        else:
            unused = [lab for lab in g.labels if lab not in c and lab not in out]
            out.add(unused[int(rng.integers(len(unused)))])
    evaluate(g, out)
    return out


def local_search(g: LabeledGraph, c: LabelSubset, k: int, rng: np.random.Generator) -> LabelSubset:
    """Drop each label in turn and greedily refill up to ``k`` labels.

    A disconnected input with fewer than ``k`` labels is first completed
    greedily, and the drops are applied to that completion. Refilling picks
    uniformly among the labels giving the fewest components. The best of the
    input, its completion and all rebuilt subsets is returned, the input
    winning ties.
    """
    evaluate(g, c)
    if len(c) > k:
        raise ValueError(f"subset has {len(c)} labels, budget is {k}")
    best = c
    tie = GreedyTieRule(rng)
    base = c
    if len(c) < k and c.comp > 1:
        base = mvca_extend(g, c, g.labels, k, tie)
        if base.key() < best.key():
            best = base
    for lab in base.sorted():
        trial = base.copy()
        trial.remove(lab)
        rebuilt = mvca_extend(g, trial, g.labels, k, tie)
        if rebuilt.key() < best.key():
            best = rebuilt
    return best if best is not c else c.copy()


def effective_qmax(s: QmaxStrategy, g: LabeledGraph, k: int, size: int) -> int:
    # Shaking past |C| + k would leave more than k labels after the removals.
    return min(qmax_eval(s, k, size), size + k + 1, g.label_count + 1)


def bvns(
    g: LabeledGraph,
    k: int,
    strategy: QmaxStrategy = DEFAULT_STRATEGY,
    stop: StoppingCondition = StoppingCondition(max_time=60.0),
    seed: int | None = None,
    trace: list | None = None,
) -> RunRecord:
    """Shake-then-local-search loop with amplitude reset on improvement.

    Moves only when the local optimum has strictly fewer components than the
    incumbent. If ``trace`` is a list, one ``(q, q_max, comp_before,
    comp_after, moved)`` tuple is appended per iteration.
    """
    if k < 1:
        raise ValueError(f"budget k must be >= 1, got {k}")
    rng = np.random.default_rng(seed)
    run = Tracker("bvns", seed, stop)
    current = random_solution(g, k, rng)
    run.offer(current)

    while not run.done():
        q = 1
        q_max = effective_qmax(strategy, g, k, len(current))
        if q_max <= 1:
            # Empty neighbourhood range: nothing can change any more.
            break
        while q < q_max and not run.done():
            shaken = shake(g, current, q, rng)
            candidate = local_search(g, shaken, k, rng)
            moved = candidate.comp < current.comp
            if trace is not None:
                trace.append((q, q_max, current.comp, candidate.comp, moved))
            if moved:
                current = candidate
                run.offer(current)
                q = 1
                q_max = effective_qmax(strategy, g, k, len(current))
            else:
                q += 1
            run.tick(moved)
    return run.record()
