"""
Benchmark harness: run solvers over instance groups and tabulate the results.

Each (instance, algorithm, repeat) cell is one run and one CSV row. Group
summaries average the objective and time-to-best over a group's runs.
"""

from __future__ import annotations

import csv
import logging
import os
import time
import traceback
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .constructive import mvca
from .exact import ExactConfig, exact_solve
from .instances import Instance, InstanceSpec, generate_instance, read_instance, write_instance
from .metaheuristics import (
    DEFAULT_STRATEGY,
    GaConfig,
    QmaxStrategy,
    StoppingCondition,
    bvns,
    ga,
    grasp,
    pilot_method,
)

log = logging.getLogger(__name__)

ALGORITHMS = ("mvca", "exact", "pilot", "ga", "grasp", "bvns")
DISPLAY_NAMES = {
    "mvca": "MVCA",
    "exact": "EXACT",
    "pilot": "PM",
    "ga": "GA",
    "grasp": "GRASP",
    "bvns": "BVNS",
}
CSV_COLUMNS = [
    "instance_path",
    "n",
    "l",
    "k",
    "algorithm",
    "seed",
    "objective",
    "labels_used",
    "time_to_best_ms",
    "total_time_ms",
    "status",
]
WORKERS_ENV = "KLSF_WORKERS"


def default_time_limit(n: int) -> float:
    """One minute up to 200 vertices, ten minutes above."""
    return 60.0 if n <= 200 else 600.0


def default_workers() -> int:
    return int(os.environ.get(WORKERS_ENV, "1"))


def instance_seed(base: int, n: int, labels: int, index: int) -> int:
    return int(np.random.SeedSequence([base, n, labels, index]).generate_state(1)[0])


@dataclass(frozen=True)
class SolverConfig:
    strategy: QmaxStrategy = DEFAULT_STRATEGY
    ga: GaConfig = GaConfig()
    max_iterations: int | None = None


@dataclass(frozen=True)
class GroupSpec:
    n: int
    label_count: int
    density: float = 0.5
    k: int | None = None
    instances: int = 10

    def __post_init__(self):
        if self.instances < 1:
            raise ValueError("every group needs at least one instance")


@dataclass
class BenchPlan:
    groups: list[GroupSpec]
    algorithms: list[str]
    out_dir: Path
    seed: int = 0
    time_limit: float | None = None
    repeats: int = 1
    workers: int = 1
    solver: SolverConfig = field(default_factory=SolverConfig)

    def __post_init__(self):
        if not self.groups:
            raise ValueError("bench plan has no instance groups")
        if not self.algorithms:
            raise ValueError("bench plan has no algorithms")
        unknown = set(self.algorithms) - set(ALGORITHMS)
        if unknown:
            raise ValueError(f"unknown algorithms: {sorted(unknown)}")
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError("time limits must be positive")
        if self.repeats < 1 or self.workers < 1:
            raise ValueError("repeats and workers must be >= 1")
        self.out_dir = Path(self.out_dir)

    def limit_for(self, n: int) -> float:
        return self.time_limit if self.time_limit is not None else default_time_limit(n)


@dataclass
class AlgoSummary:
    mean_objective: float | None
    mean_time_to_best_ms: float | None
    runs: int
    not_found: int = 0
    errors: int = 0


@dataclass
class GroupSummary:
    n: int
    label_count: int
    k: str
    algorithms: dict[str, AlgoSummary]


def run_algorithm(
    name: str,
    inst: Instance,
    time_limit: float | None,
    seed: int | None = None,
    cfg: SolverConfig = SolverConfig(),
) -> dict:
    """Run one solver and return the result columns of a CSV row.

    ``time_limit`` may be None for iteration-bounded metaheuristic runs.
    """
    g, k = inst.graph, inst.k
    stop = StoppingCondition(max_time=time_limit, max_iterations=cfg.max_iterations)
    if name == "exact":
        res = exact_solve(g, k, ExactConfig(time_limit) if time_limit else ExactConfig())
        if res.not_found:
            return dict(objective="", labels_used="", time_to_best_ms="",
                        total_time_ms=res.elapsed * 1e3, status="nf")
        return dict(objective=res.solution.comp, labels_used=len(res.solution),
                    time_to_best_ms=res.elapsed * 1e3, total_time_ms=res.elapsed * 1e3,
                    status="ok")
    if name == "mvca":
        start = time.perf_counter()
        c = mvca(g, k)
        elapsed = (time.perf_counter() - start) * 1e3
        return dict(objective=c.comp, labels_used=len(c), time_to_best_ms=elapsed,
                    total_time_ms=elapsed, status="ok")
    if name == "pilot":
        rec = pilot_method(g, k, stop)
    elif name == "ga":
        rec = ga(g, k, cfg.ga, stop, seed=seed)
    elif name == "grasp":
        rec = grasp(g, k, stop, seed=seed)
    elif name == "bvns":
        rec = bvns(g, k, cfg.strategy, stop, seed=seed)
    else:
        raise ValueError(f"unknown algorithm {name!r}")
    return dict(objective=rec.objective, labels_used=rec.labels_used,
                time_to_best_ms=rec.time_to_best * 1e3, total_time_ms=rec.total_time * 1e3,
                status="ok")


def _run_cell(args) -> dict:
    path, algorithm, seed, time_limit, cfg, inst = args
    if inst is None:
        inst = read_instance(path)
    g = inst.graph
    row = dict(instance_path=str(path), n=g.n, l=g.label_count, k=inst.k,
               algorithm=algorithm, seed=seed)
    try:
        row.update(run_algorithm(algorithm, inst, time_limit, seed, cfg))
    except Exception:
        log.error("run failed: %s on %s\n%s", algorithm, path, traceback.format_exc())
        row.update(objective="", labels_used="", time_to_best_ms="", total_time_ms="",
                   status="error")
    return row


def prepare_instances(plan: BenchPlan) -> list[tuple[Path, Instance]]:
    """Generate (or reuse identical) instance files under ``out_dir/instances``."""
    inst_dir = plan.out_dir / "instances"
    inst_dir.mkdir(parents=True, exist_ok=True)
    out = []
    for grp in plan.groups:
        for i in range(grp.instances):
            seed = instance_seed(plan.seed, grp.n, grp.label_count, i)
            spec = InstanceSpec(grp.n, grp.label_count, grp.density, seed)
            inst = generate_instance(spec, grp.k)
            path = inst_dir / f"n{grp.n}_l{grp.label_count}_d{grp.density:g}_{i:02d}.klsf"
            write_instance(inst, path)
            out.append((path, inst))
    return out


def run_cells(
    instances: list[tuple[Path, Instance]],
    algorithms: list[str],
    limit_for,
    repeats: int = 1,
    seed: int = 0,
    workers: int = 1,
    cfg: SolverConfig = SolverConfig(),
) -> list[dict]:
    cells = []
    for path, inst in instances:
        for algorithm in algorithms:
            for r in range(repeats):
                cells.append((path, algorithm, seed + r, limit_for(inst.graph.n), cfg,
                              inst if workers == 1 else None))
    if workers == 1:
        rows = []
        for cell in cells:
            rows.append(_run_cell(cell))
            log.info("%s %s seed=%s -> %s", cell[1], cell[0], cell[2], rows[-1]["objective"])
        return rows
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_cell, cells))


def write_results_csv(rows: list[dict], path: str | os.PathLike) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
        writer.writeheader()
        for row in rows:
            writer.writerow({c: _fmt_cell(row.get(c, "")) for c in CSV_COLUMNS})


def read_results_csv(path: str | os.PathLike) -> list[dict]:
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def _fmt_cell(value):
    if isinstance(value, float):
        return f"{value:.3f}"
    return value


def summarize(rows: list[dict]) -> list[GroupSummary]:
    """Group rows by (n, labels), ordered ascending, and average each algorithm's runs."""
    by_group: dict[tuple[int, int], list[dict]] = defaultdict(list)
    for row in rows:
        by_group[(int(row["n"]), int(row["l"]))].append(row)
    out = []
    for (n, labels) in sorted(by_group):
        group_rows = by_group[(n, labels)]
        ks = sorted({int(r["k"]) for r in group_rows})
        algos: dict[str, AlgoSummary] = {}
        for name in _ordered_algorithms(group_rows):
            runs = [r for r in group_rows if r["algorithm"] == name]
            ok = [r for r in runs if r["status"] == "ok"]
            nf = sum(r["status"] == "nf" for r in runs)
            errors = sum(r["status"] == "error" for r in runs)
            if ok and not nf:
                mean_obj = sum(float(r["objective"]) for r in ok) / len(ok)
                mean_ttb = sum(float(r["time_to_best_ms"]) for r in ok) / len(ok)
            else:
                mean_obj = mean_ttb = None
            algos[name] = AlgoSummary(mean_obj, mean_ttb, len(runs), nf, errors)
        out.append(GroupSummary(n, labels, "/".join(map(str, ks)), algos))
    return out


def _ordered_algorithms(rows: list[dict]) -> list[str]:
    present = {r["algorithm"] for r in rows}
    return [a for a in ALGORITHMS if a in present]


def render_markdown(summaries: list[GroupSummary]) -> str:
    names = []
    for s in summaries:
        names.extend(a for a in s.algorithms if a not in names)
    names = [a for a in ALGORITHMS if a in names]
    head = ["n", "l", "k"]
    for a in names:
        head += [f"{DISPLAY_NAMES[a]} Obj", f"{DISPLAY_NAMES[a]} Time (ms)"]
    lines = ["| " + " | ".join(head) + " |", "|" + "---|" * len(head)]
    for s in summaries:
        cells = [str(s.n), str(s.label_count), s.k]
        for a in names:
            summ = s.algorithms.get(a)
            if summ is None:
                cells += ["-", "-"]
            elif summ.not_found:
                cells += ["NF", "NF"]
            elif summ.mean_objective is None:
                cells += ["error", "error"]
            else:
                cells += [f"{summ.mean_objective:.1f}", f"{summ.mean_time_to_best_ms:.1f}"]
        lines.append("| " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"


def run_bench(
    plan: BenchPlan, instances: list[tuple[Path, Instance]] | None = None
) -> tuple[list[dict], list[GroupSummary]]:
    """Run every cell of ``plan`` and write ``results.csv`` and ``results.md`` to ``out_dir``."""
    plan.out_dir.mkdir(parents=True, exist_ok=True)
    if instances is None:
        instances = prepare_instances(plan)
    rows = run_cells(instances, plan.algorithms, plan.limit_for, plan.repeats, plan.seed,
                     plan.workers, plan.solver)
    csv_path = plan.out_dir / "results.csv"
    write_results_csv(rows, csv_path)
    # Summaries come from the CSV text so they can be recomputed exactly from it.
    summaries = summarize(read_results_csv(csv_path))
    (plan.out_dir / "results.md").write_text(render_markdown(summaries))
    return rows, summaries
