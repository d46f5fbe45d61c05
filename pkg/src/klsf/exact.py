"""Exact backtracking over label combinations, plus a brute-force oracle for tests."""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .graph import LabeledGraph, LabelSubset

ORACLE_MAX_LABELS = 20


@dataclass(frozen=True)
class ExactConfig:
    """``time_limit`` in seconds. With ``report_not_found`` a timeout yields no solution."""

    time_limit: float = 3 * 3600.0
    report_not_found: bool = True

    def __post_init__(self):
        if not self.time_limit > 0:
            raise ValueError(f"time_limit must be positive, got {self.time_limit}")


@dataclass
class ExactResult:
    solution: LabelSubset | None
    optimal: bool
    timed_out: bool
    elapsed: float
    nodes: int

    @property
    def not_found(self) -> bool:
        return self.solution is None


class _Timeout(Exception):
    pass


def exact_solve(g: LabeledGraph, k: int, cfg: ExactConfig = ExactConfig()) -> ExactResult:
    """Enumerate every label combination of size 1..k in lexicographic order.

    The incumbent is the combination with fewest components, ties going to
    fewer labels and then to the lexicographically smaller tuple. The search
    stops as soon as a single-component combination is found. The empty set
    is never reported; a single label is never worse.
    """
    if k < 1:
        raise ValueError(f"budget k must be >= 1, got {k}")
    if k > g.label_count:
        raise ValueError(f"budget k={k} exceeds the {g.label_count} available labels")

    start = time.perf_counter()
    deadline = start + cfg.time_limit
    labels = g.label_count
    best_key: tuple | None = None
    best: tuple[int, ...] = ()
    nodes = 0

    def visit(chosen: list[int], uf) -> bool:
        # Returns True once a connected solution has been found.
        nonlocal best_key, best, nodes
        if time.perf_counter() > deadline:
            raise _Timeout
        roots = uf.roots()
        last = chosen[-1] if chosen else 0
        for lab in range(last + 1, labels + 1):
            nodes += 1
            comp = g.comp_after_adding(roots, uf.count, lab)
            chosen.append(lab)
            key = (comp, len(chosen), tuple(chosen))
            if best_key is None or key < best_key:
                best_key, best = key, tuple(chosen)
            if comp == 1:
                return True
            if len(chosen) < k:
                child = uf.copy()
                for u, v in g.label_pairs[lab]:
                    child.union(u, v)
                if visit(chosen, child):
                    return True
            chosen.pop()
        return False

    timed_out = False
    try:
        visit([], g.union_find())
    except _Timeout:
        timed_out = True
    elapsed = time.perf_counter() - start

    if timed_out and (cfg.report_not_found or best_key is None):
        return ExactResult(None, False, True, elapsed, nodes)
    solution = LabelSubset(best, comp=best_key[0])
    return ExactResult(solution, not timed_out, timed_out, elapsed, nodes)


def _bfs_components(n: int, edges: list[tuple[int, int]]) -> int:
    adj: list[list[int]] = [[] for _ in range(n + 1)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = [False] * (n + 1)
    comps = 0
    for s in range(1, n + 1):
        if seen[s]:
            continue
        comps += 1
        seen[s] = True
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    queue.append(y)
    return comps


def bfs_comp_count(g: LabeledGraph, labels) -> int:
    """Component count by breadth-first search over the filtered edge list."""
    chosen = set(labels)
    return _bfs_components(g.n, [(u, v) for u, v, lab in g.edges if lab in chosen])


def brute_force_oracle(g: LabeledGraph, k: int) -> int:
    """Minimum component count over every label subset of size at most ``k``."""
    if g.label_count > ORACLE_MAX_LABELS:
        raise ValueError(
            f"oracle limited to {ORACLE_MAX_LABELS} labels, graph has {g.label_count}"
        )
    best = g.n
    for size in range(0, min(k, g.label_count) + 1):
        for subset in combinations(range(1, g.label_count + 1), size):
            best = min(best, bfs_comp_count(g, subset))
    return best
