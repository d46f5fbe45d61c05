"""Pilot method: score every candidate label by completing it greedily."""

from __future__ import annotations

from ..constructive import FIRST_MIN, mvca_extend
from ..graph import LabeledGraph, LabelSubset, evaluate
from .common import RunRecord, StoppingCondition, Tracker


def pilot_method(
    g: LabeledGraph,
    k: int,
    stop: StoppingCondition = StoppingCondition(max_time=60.0),
    trace: list | None = None,
) -> RunRecord:
    """Grow a master solution one label at a time.

    At each level every label outside the master is tried: the master plus
    that label is completed with the deterministic greedy, and the label
    whose completion has the fewest components joins the master (lowest id
    on ties). The stopping condition is checked between levels only, so a
    level is always scanned in full. ``trace`` receives the number of
    candidates evaluated per level.
    """
    if k < 1:
        raise ValueError(f"budget k must be >= 1, got {k}")
    run = Tracker("pilot", None, stop)
    master = evaluate(g, LabelSubset())
    run.offer(mvca_extend(g, master, g.labels, k, FIRST_MIN))

    while len(master) < k and master.comp > 1 and not run.done():
        best_label, best_completion = None, None
        evaluated = 0
        for lab in g.labels:
            if lab in master:
                continue
            trial = master.copy()
            trial.add(lab)
            completion = mvca_extend(g, trial, g.labels, k, FIRST_MIN)
            evaluated += 1
            if best_completion is None or completion.comp < best_completion.comp:
                best_label, best_completion = lab, completion
        if trace is not None:
            trace.append(evaluated)
        if best_label is None:
            break
        master.add(best_label)
        evaluate(g, master)
        run.tick(run.offer(best_completion))
    return run.record()
