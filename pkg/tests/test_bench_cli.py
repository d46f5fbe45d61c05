import csv
import io
import json
import math
from contextlib import redirect_stdout

import pytest

from klsf import InstanceSpec, exact_solve, generate_instance, read_instance, write_instance
from klsf.bench import (
    CSV_COLUMNS,
    BenchPlan,
    GroupSpec,
    SolverConfig,
    read_results_csv,
    render_markdown,
    run_algorithm,
    run_bench,
    summarize,
)
from klsf.cli import EXIT_INVALID, EXIT_NOT_FOUND, EXIT_OK, EXIT_PARSE, main, parse_duration
from klsf.instances import read_manifest


def run_cli(*argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main([str(a) for a in argv])
    return code, buf.getvalue()


def test_parse_duration():
    assert parse_duration("60s") == 60
    assert parse_duration("1ms") == pytest.approx(1e-3)
    assert parse_duration("10m") == 600
    assert parse_duration("2.5") == 2.5


# -- generate ---------------------------------------------------------------


def test_generate_writes_files_and_manifest(tmp_path):
    out = tmp_path / "inst"
    code, _ = run_cli("generate", "--n", 30, "--labels", 10, "--count", 3, "--seed", 4, "--out", out)
    assert code == EXIT_OK
    rows = read_manifest(out / "manifest.csv")
    assert len(rows) == 3
    for row in rows:
        inst = read_instance(out / row["path"])
        assert (inst.graph.n, inst.graph.label_count, inst.k) == (30, 10, int(row["k"]))


def test_generate_is_byte_identical(tmp_path):
    for sub in ("a", "b"):
        assert run_cli("generate", "--n", 25, "--labels", 8, "--count", 2, "--seed", 9,
                       "--out", tmp_path / sub)[0] == EXIT_OK
    for f in sorted((tmp_path / "a").iterdir()):
        assert f.read_bytes() == (tmp_path / "b" / f.name).read_bytes()


def test_generate_rejects_bad_density(tmp_path):
    with pytest.raises(SystemExit) as info:
        main(["generate", "--n", "10", "--labels", "3", "--density", "1.5", "--out", str(tmp_path)])
    assert info.value.code == EXIT_INVALID
    assert not any(tmp_path.iterdir())


def test_generate_no_valid_k(tmp_path):
    # one label on a dense graph: the greedy always connects it
    code, _ = run_cli("generate", "--n", 10, "--labels", 1, "--density", 1, "--count", 1,
                      "--out", tmp_path)
    assert code == EXIT_INVALID


# -- solve ------------------------------------------------------------------


@pytest.fixture
def tiny_file(tmp_path):
    inst = generate_instance(InstanceSpec(12, 8, 0.2, seed=2), k=3)
    path = tmp_path / "tiny.klsf"
    write_instance(inst, path)
    return path, inst


def test_solve_prints_one_row(tiny_file):
    path, _ = tiny_file
    code, out = run_cli("solve", path, "--algorithm", "bvns", "--max-iterations", 50, "--header")
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 1 and list(rows[0]) == CSV_COLUMNS
    assert rows[0]["status"] == "ok" and int(rows[0]["labels_used"]) <= 3


def test_solve_bvns_matches_exact(tiny_file):
    path, inst = tiny_file
    opt = exact_solve(inst.graph, inst.k).solution.comp
    for algorithm in ("exact", "bvns"):
        code, out = run_cli("solve", path, "--algorithm", algorithm, "--time-limit", "2s")
        assert code == EXIT_OK
        assert int(out.split(",")[6]) == opt


def test_solve_exact_timeout_is_not_found(tmp_path):
    inst = generate_instance(InstanceSpec(100, 100, 0.5, seed=1))
    path = tmp_path / "big.klsf"
    write_instance(inst, path)
    code, out = run_cli("solve", path, "--algorithm", "exact", "--time-limit", "1ms")
    assert code == EXIT_NOT_FOUND
    assert out.strip().endswith(",nf")


def test_solve_parse_error(tmp_path):
    path = tmp_path / "bad.klsf"
    path.write_text("p klsf 5 1 3 1\ne 5 5 1\n")
    assert run_cli("solve", path)[0] == EXIT_PARSE


def test_solve_missing_file(tmp_path):
    assert run_cli("solve", tmp_path / "nope.klsf")[0] == 1


# -- bench ------------------------------------------------------------------


def small_plan(tmp_path, **kw):
    base = dict(
        groups=[GroupSpec(20, 10, 0.3, None, 2), GroupSpec(16, 4, 0.3, None, 2)],
        algorithms=["mvca", "exact", "bvns"],
        out_dir=tmp_path,
        time_limit=1.0,
        solver=SolverConfig(max_iterations=20),
    )
    base.update(kw)
    return BenchPlan(**base)


def test_plan_validation(tmp_path):
    with pytest.raises(ValueError):
        small_plan(tmp_path, groups=[])
    with pytest.raises(ValueError):
        small_plan(tmp_path, algorithms=[])
    with pytest.raises(ValueError):
        small_plan(tmp_path, algorithms=["simplex"])


def test_empty_plan_file_is_usage_error(tmp_path):
    plan = tmp_path / "plan.json"
    plan.write_text(json.dumps({"groups": [], "algorithms": ["bvns"]}))
    assert run_cli("bench", "--plan", plan, "--out", tmp_path / "o")[0] == EXIT_INVALID


def test_bench_rows_and_summaries(tmp_path):
    plan = small_plan(tmp_path, repeats=2)
    rows, summaries = run_bench(plan)
    assert len(rows) == 4 * 3 * 2
    assert [(s.n, s.label_count) for s in summaries] == [(16, 4), (20, 10)]
    on_disk = read_results_csv(tmp_path / "results.csv")
    assert len(on_disk) == len(rows)
    assert summarize(on_disk) == summaries
    assert (tmp_path / "results.md").read_text() == render_markdown(summaries)
    for s in summaries:
        for name, summ in s.algorithms.items():
            runs = [r for r in on_disk if int(r["n"]) == s.n and r["algorithm"] == name]
            mean = sum(float(r["objective"]) for r in runs) / len(runs)
            assert math.isclose(summ.mean_objective, mean)


def test_bench_not_found_cells(tmp_path):
    plan = small_plan(tmp_path, groups=[GroupSpec(100, 100, 0.5, None, 1)],
                      algorithms=["exact"], time_limit=0.001)
    _, summaries = run_bench(plan)
    assert summaries[0].algorithms["exact"].not_found == 1
    assert "| NF | NF |" in render_markdown(summaries)


def test_bench_failed_run_becomes_error_row(tmp_path, monkeypatch):
    import klsf.bench as bench

    def boom(*a, **k):
        raise RuntimeError("solver crashed")

    monkeypatch.setattr(bench, "bvns", boom)
    rows, summaries = run_bench(small_plan(tmp_path, algorithms=["mvca", "bvns"]))
    assert {r["status"] for r in rows if r["algorithm"] == "bvns"} == {"error"}
    assert all(r["status"] == "ok" for r in rows if r["algorithm"] == "mvca")
    assert summaries[0].algorithms["bvns"].errors == 2


def test_bench_cli_from_instance_dir(tmp_path):
    run_cli("generate", "--n", 15, "--labels", 6, "--density", 0.3, "--count", 2, "--out",
            tmp_path / "inst")
    code, out = run_cli("bench", "--instances-dir", tmp_path / "inst", "--algorithms", "mvca",
                        "pilot", "--time-limit", "1s", "--out", tmp_path / "res")
    assert code == EXIT_OK
    assert out.splitlines()[0].startswith("| n | l | k | MVCA Obj")
    assert len(read_results_csv(tmp_path / "res" / "results.csv")) == 4


def test_bench_cli_parallel_workers(tmp_path):
    code, out = run_cli("bench", "--n", 16, "--label-ratios", 0.5, "--instances", 2,
                        "--algorithms", "grasp", "--time-limit", "0.3s", "--workers", 2,
                        "--out", tmp_path)
    assert code == EXIT_OK
    assert len(read_results_csv(tmp_path / "results.csv")) == 2


def test_run_algorithm_unknown(tiny_file):
    with pytest.raises(ValueError):
        run_algorithm("simplex", tiny_file[1], 1.0)
