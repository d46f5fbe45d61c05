"""Acceptance gate: one test and one reported pass/fail line per criterion.

Set ``KLSF_OFFICIAL_DIR`` to a directory of label-matrix files to enable the
published-instance regressions.
"""

import functools
import io
import os
import time
from pathlib import Path

import numpy as np
import pytest

from klsf import (
    GaConfig,
    Instance,
    InstanceSpec,
    LabelSubset,
    QmaxStrategy,
    StoppingCondition,
    brute_force_oracle,
    bvns,
    comp_count,
    determine_k,
    exact_solve,
    extract_forest,
    ga,
    generate_graph,
    generate_instance,
    grasp,
    hamming_distance,
    local_search,
    pilot_method,
    read_instance,
    shake,
    write_instance,
)
from klsf.bench import BenchPlan, GroupSpec, instance_seed, run_bench
from klsf.instances import import_official

from .conftest import report
from .helpers import nx_components, random_graph

TINY_COUNT = 100
OFFICIAL_DIR = os.environ.get("KLSF_OFFICIAL_DIR")


@functools.lru_cache(maxsize=None)
def tiny_instances() -> tuple:
    """100 seeded instances with n <= 16, labels <= 10, k in {2, 3}, plus oracle optima."""
    out = []
    for i in range(TINY_COUNT):
        rng = np.random.default_rng([2024, i])
        n = int(rng.integers(6, 17))
        labels = int(rng.integers(3, 11))
        k = int(rng.integers(2, 4))
        spec = InstanceSpec(n, labels, float(rng.uniform(0.1, 0.35)), int(rng.integers(2**32)))
        g = generate_graph(spec)
        out.append((g, k, brute_force_oracle(g, k)))
    return tuple(out)


@pytest.mark.slow
def test_exact_matches_oracle():
    start = time.perf_counter()
    cases = tiny_instances()
    mismatches = 0
    for g, k, opt in cases:
        res = exact_solve(g, k)
        assert res.optimal and len(res.solution) <= k
        mismatches += res.solution.comp != opt
    elapsed = time.perf_counter() - start
    ok = mismatches == 0 and elapsed < 30
    report("exact = oracle on 100 tiny instances, < 30 s", ok,
           f"{TINY_COUNT - mismatches}/{TINY_COUNT} equal in {elapsed:.1f} s")
    assert ok


@pytest.mark.slow
def test_bvns_reaches_optimum_on_tiny_instances():
    stop = StoppingCondition(max_time=5.0)
    strategy = QmaxStrategy("sol", "4/3")
    hits = 0
    for i, (g, k, opt) in enumerate(tiny_instances()):
        rec = bvns(g, k, strategy, stop, seed=i)
        assert rec.labels_used <= k and rec.objective == comp_count(g, rec.best)
        hits += rec.objective == opt
    ok = hits >= 95
    report("BVNS (sol, 4/3, 5 s) hits the optimum on >= 95/100", ok, f"{hits}/{TINY_COUNT}")
    assert ok


@pytest.mark.slow
def test_low_alpha_is_worse():
    labels_per_group = (25, 50, 100, 125)
    stop = StoppingCondition(max_time=60.0)
    worse = 0
    details = []
    for labels in labels_per_group:
        means = {}
        for alpha in ("1/3", "4/3"):
            strategy = QmaxStrategy("sol", alpha)
            objs = []
            for i in range(10):
                inst = generate_instance(InstanceSpec(100, labels, 0.5, instance_seed(0, 100, labels, i)))
                objs.append(bvns(inst.graph, inst.k, strategy, stop, seed=i).objective)
            means[alpha] = float(np.mean(objs))
        worse += means["1/3"] > means["4/3"]
        details.append(f"l={labels}: {means['1/3']:.1f} vs {means['4/3']:.1f}")
    ok = worse >= 3
    report("alpha=1/3 strictly worse than 4/3 on >= 3 of 4 groups (n=100, 60 s)", ok,
           f"{worse}/4; " + "; ".join(details))
    assert ok


@pytest.mark.slow
def test_comparison_table_shape(tmp_path):
    groups = [GroupSpec(n, int(n * r), 0.5, None, 10) for n in (50, 100) for r in (0.25, 0.5)]
    plan = BenchPlan(groups=groups, algorithms=["pilot", "ga", "grasp", "bvns"],
                     out_dir=tmp_path, time_limit=30.0, workers=1)
    rows, summaries = run_bench(plan)
    assert all(r["status"] == "ok" for r in rows)
    assert all(int(r["labels_used"]) <= int(r["k"]) for r in rows)
    failures = []
    for s in summaries:
        best = s.algorithms["bvns"].mean_objective
        for other in ("pilot", "ga", "grasp"):
            if best > s.algorithms[other].mean_objective + 0.1:
                failures.append(f"n={s.n} l={s.label_count} vs {other}")
    table = "; ".join(
        f"({s.n},{s.label_count},k={s.k}) "
        + "/".join(f"{s.algorithms[a].mean_objective:.1f}" for a in ("pilot", "ga", "grasp", "bvns"))
        for s in summaries
    )
    ok = not failures
    report("bench table: BVNS mean <= PM/GA/GRASP mean + 0.1 per group", ok,
           f"PM/GA/GRASP/BVNS {table}" + (f"; failing {failures}" if failures else ""))
    assert ok


@pytest.mark.skipif(not OFFICIAL_DIR, reason="KLSF_OFFICIAL_DIR not set")
@pytest.mark.slow
def test_official_bvns_means():
    expected = {25: 2.1, 50: 5.2, 100: 8.3, 125: 4.1}
    groups = official_groups()
    failures = []
    for labels, want in expected.items():
        objs = [bvns(inst.graph, inst.k, stop=StoppingCondition(max_time=60.0), seed=i).objective
                for i, inst in enumerate(groups.get(labels, []))]
        got = float(np.mean(objs)) if objs else float("nan")
        if not abs(got - want) <= 0.2:
            failures.append(f"l={labels}: {got:.2f} vs {want}")
    ok = not failures
    report("official n=100 groups: BVNS means within 0.2 of the published values", ok,
           "; ".join(failures))
    assert ok


def test_invariant_suite():
    rng = np.random.default_rng(7)
    checks = {}

    ok = True
    for _ in range(1000):
        g = random_graph(rng)
        small = {lab for lab in g.labels if rng.random() < 0.4}
        big = small | {lab for lab in g.labels if rng.random() < 0.4}
        a, b = comp_count(g, LabelSubset(small)), comp_count(g, LabelSubset(big))
        ok &= b <= a and a == nx_components(g, small)
    checks["monotone"] = ok

    ok = True
    for _ in range(1000):
        g = random_graph(rng, n_max=12, l_max=12)
        c = LabelSubset(lab for lab in g.labels if rng.random() < 0.4)
        q = int(rng.integers(1, g.label_count + 1))
        ok &= hamming_distance(c, shake(g, c, q, rng)) == q
    checks["shake"] = ok

    ok = True
    for _ in range(1000):
        g = random_graph(rng, n_max=14)
        k = int(rng.integers(1, g.label_count + 1))
        c = LabelSubset(int(x) + 1 for x in rng.permutation(g.label_count)[: int(rng.integers(0, k + 1))])
        comp_count(g, c)
        out = local_search(g, c, k, rng)
        ok &= out.key() <= c.key() and len(out) <= k
    checks["local_search"] = ok

    ok = True
    for _ in range(1000):
        g = random_graph(rng)
        c = LabelSubset(lab for lab in g.labels if rng.random() < 0.5)
        forest = extract_forest(g, c)
        comp = comp_count(g, c)
        ok &= len(forest.edges) == g.n - comp and forest.tree_count == comp
        ok &= nx_components(g.__class__(g.n, forest.edges, g.label_count), c.members) == comp
    checks["forest"] = ok

    stop = StoppingCondition(max_iterations=25)
    solvers = {
        "bvns": lambda g, k, s: bvns(g, k, stop=stop, seed=s),
        "grasp": lambda g, k, s: grasp(g, k, stop=stop, seed=s),
        "ga": lambda g, k, s: ga(g, k, GaConfig(10), stop=stop, seed=s),
        "pilot": lambda g, k, s: pilot_method(g, k, stop),
    }
    feasible = deterministic = True
    for i in range(20):
        g = random_graph(rng, n_max=30, l_max=15)
        k = int(rng.integers(1, g.label_count + 1))
        for run in solvers.values():
            a, b = run(g, k, i), run(g, k, i)
            feasible &= a.labels_used <= k and a.objective == nx_components(g, a.best.members)
            deterministic &= a.best == b.best and a.objective == b.objective
        spec = InstanceSpec(g.n, g.label_count, 0.3, i)
        deterministic &= generate_graph(spec) == generate_graph(spec)
    checks["feasible"] = feasible
    checks["deterministic"] = deterministic

    ok = all(checks.values())
    report("invariant suite (1000 cases each, feasibility, determinism)", ok,
           ", ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in checks.items()))
    assert ok


def test_instance_round_trip():
    rng = np.random.default_rng(8)
    same = 0
    for i in range(1000):
        n = int(rng.integers(2, 40))
        labels = int(rng.integers(1, 25))
        g = generate_graph(InstanceSpec(n, labels, float(rng.uniform(0.01, 1.0)), i))
        inst = Instance(g, int(rng.integers(1, labels + 1)))
        buf = io.StringIO()
        write_instance(inst, buf)
        buf.seek(0)
        same += read_instance(buf) == inst
    ok = same == 1000
    report("generate -> write -> read identity on 1000 instances", ok, f"{same}/1000")
    assert ok


def official_groups() -> dict[int, list[Instance]]:
    groups: dict[int, list[Instance]] = {}
    for path in sorted(Path(OFFICIAL_DIR).iterdir()):
        if path.is_file():
            for inst in import_official(path):
                if inst.graph.n == 100:
                    groups.setdefault(inst.graph.label_count, []).append(inst)
    return groups


@pytest.mark.skipif(not OFFICIAL_DIR, reason="KLSF_OFFICIAL_DIR not set")
def test_official_determine_k():
    groups = official_groups()
    ks = [sorted({determine_k(inst.graph) for inst in groups[lab]}) for lab in sorted(groups)]
    ok = ks == [[3], [3], [4], [5]]
    report("determine_k on the official n=100 groups gives 3, 3, 4, 5", ok, f"got {ks}")
    assert ok
