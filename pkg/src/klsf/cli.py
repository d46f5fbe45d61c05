"""Command-line front end: ``klsf generate | solve | bench | import-official``."""

from __future__ import annotations

import argparse
import csv
import json
import logging
import re
import sys
from pathlib import Path

from .bench import (
    ALGORITHMS,
    CSV_COLUMNS,
    BenchPlan,
    GroupSpec,
    SolverConfig,
    _fmt_cell,
    default_time_limit,
    default_workers,
    instance_seed,
    render_markdown,
    run_algorithm,
    run_bench,
)
from .instances import (
    InstanceFormatError,
    InstanceSpec,
    NoValidKError,
    generate_instance,
    import_official,
    read_instance,
    write_instance,
    write_manifest,
)
from .metaheuristics import GaConfig, QmaxStrategy

EXIT_OK = 0
EXIT_IO = 1
EXIT_INVALID = 2
EXIT_PARSE = 3
EXIT_NOT_FOUND = 4

_DURATION = re.compile(r"^\s*([0-9]*\.?[0-9]+)\s*(ms|s|m|h)?\s*$")
_UNITS = {"ms": 1e-3, "s": 1.0, "m": 60.0, "h": 3600.0, None: 1.0}


def parse_duration(text: str) -> float:
    """``"60s"``, ``"1ms"``, ``"10m"`` or a bare number of seconds."""
    match = _DURATION.match(text)
    if not match:
        raise argparse.ArgumentTypeError(f"invalid duration {text!r}")
    value = float(match.group(1)) * _UNITS[match.group(2)]
    if value <= 0:
        raise argparse.ArgumentTypeError("duration must be positive")
    return value


def _density(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid density {text!r}") from None
    if not 0 < value <= 1:
        raise argparse.ArgumentTypeError("density must lie in (0, 1]")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("value must be >= 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="klsf", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write random instances and a manifest")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--labels", type=_positive_int, required=True)
    p.add_argument("--density", type=_density, default=0.5)
    p.add_argument("--count", type=_positive_int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k", type=_positive_int, help="label budget (default: automatic)")
    p.add_argument("--out", type=Path, default=Path("instances"))

    p = sub.add_parser("solve", help="run one solver on one instance file")
    p.add_argument("instance", type=Path)
    p.add_argument("--algorithm", choices=ALGORITHMS, default="bvns")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--time-limit", type=parse_duration, default=None)
    p.add_argument("--max-iterations", type=int, default=None)
    p.add_argument("--qmax-strategy", choices=["fixed", "k", "sol"], default="sol")
    p.add_argument("--alpha", default="4/3")
    p.add_argument("--population", type=_positive_int, default=40)
    p.add_argument("--generations", type=_positive_int, default=None)
    p.add_argument("--header", action="store_true", help="print the CSV header first")

    p = sub.add_parser("bench", help="run the algorithm comparison")
    p.add_argument("--plan", type=Path, help="JSON plan; overrides the group flags")
    p.add_argument("--n", type=_positive_int, nargs="+", default=[])
    p.add_argument("--label-ratios", type=float, nargs="+", default=[0.25, 0.5, 1.0, 1.25])
    p.add_argument("--density", type=_density, default=0.5)
    p.add_argument("--instances", type=_positive_int, default=10)
    p.add_argument("--instances-dir", type=Path, help="use existing .klsf files instead")
    p.add_argument("--algorithms", nargs="+", choices=ALGORITHMS,
                   default=["exact", "pilot", "ga", "grasp", "bvns"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--time-limit", type=parse_duration, default=None,
                   help="per-run limit (default: 60s for n <= 200, 600s above)")
    p.add_argument("--repeats", type=_positive_int, default=1)
    p.add_argument("--workers", type=_positive_int, default=None,
                   help="parallel runs (default: $KLSF_WORKERS or 1); use 1 for timing")
    p.add_argument("--qmax-strategy", choices=["fixed", "k", "sol"], default="sol")
    p.add_argument("--alpha", default="4/3")
    p.add_argument("--population", type=_positive_int, default=40)
    p.add_argument("--out", type=Path, default=Path("results"))

    p = sub.add_parser("import-official", help="convert label-matrix instance files")
    p.add_argument("files", type=Path, nargs="+")
    p.add_argument("--k", type=_positive_int, default=None)
    p.add_argument("--out", type=Path, default=Path("instances"))
    return parser


def _solver_config(args, max_iterations=None) -> SolverConfig:
    strategy = QmaxStrategy(args.qmax_strategy, args.alpha)
    ga_cfg = GaConfig(args.population, getattr(args, "generations", None))
    return SolverConfig(strategy, ga_cfg, max_iterations)


def cmd_generate(args) -> int:
    args.out.mkdir(parents=True, exist_ok=True)
    rows = []
    for i in range(args.count):
        seed = instance_seed(args.seed, args.n, args.labels, i)
        inst = generate_instance(InstanceSpec(args.n, args.labels, args.density, seed), args.k)
        path = args.out / f"n{args.n}_l{args.labels}_d{args.density:g}_{i:02d}.klsf"
        write_instance(inst, path)
        rows.append(dict(path=path.name, n=args.n, l=args.labels, density=args.density,
                         seed=seed, k=inst.k))
    write_manifest(rows, args.out / "manifest.csv")
    print(f"wrote {len(rows)} instances to {args.out}")
    return EXIT_OK


def cmd_solve(args) -> int:
    inst = read_instance(args.instance)
    limit = args.time_limit
    if limit is None and (args.max_iterations is None or args.algorithm == "exact"):
        limit = default_time_limit(inst.graph.n)
    result = run_algorithm(args.algorithm, inst, limit, args.seed,
                           _solver_config(args, args.max_iterations))
    g = inst.graph
    row = dict(instance_path=str(args.instance), n=g.n, l=g.label_count, k=inst.k,
               algorithm=args.algorithm, seed=args.seed, **result)
    writer = csv.DictWriter(sys.stdout, fieldnames=CSV_COLUMNS, lineterminator="\n")
    if args.header:
        writer.writeheader()
    writer.writerow({c: _fmt_cell(row[c]) for c in CSV_COLUMNS})
    return EXIT_NOT_FOUND if result["status"] == "nf" else EXIT_OK


def _plan_from_json(path: Path, args) -> BenchPlan:
    data = json.loads(path.read_text())
    groups = [GroupSpec(**g) for g in data.pop("groups", [])]
    solver = data.pop("solver", {})
    cfg = SolverConfig(
        QmaxStrategy(solver.get("qmax_strategy", "sol"), solver.get("alpha", "4/3")),
        GaConfig(solver.get("population", 40), solver.get("generations")),
    )
    data.setdefault("out_dir", str(args.out))
    data.setdefault("workers", args.workers or default_workers())
    return BenchPlan(groups=groups, solver=cfg, **data)


def cmd_bench(args) -> int:
    workers = args.workers or default_workers()
    if args.plan is not None:
        plan = _plan_from_json(args.plan, args)
        instances = None
    elif args.instances_dir is not None:
        files = sorted(args.instances_dir.glob("*.klsf"))
        if not files:
            print(f"no .klsf files in {args.instances_dir}", file=sys.stderr)
            return EXIT_INVALID
        instances = [(f, read_instance(f)) for f in files]
        groups = sorted({(i.graph.n, i.graph.label_count) for _, i in instances})
        plan = BenchPlan(
            groups=[GroupSpec(n, lab) for n, lab in groups],
            algorithms=args.algorithms, out_dir=args.out, seed=args.seed,
            time_limit=args.time_limit, repeats=args.repeats, workers=workers,
            solver=_solver_config(args),
        )
    else:
        groups = [
            GroupSpec(n, max(1, int(n * r)), args.density, None, args.instances)
            for n in args.n
            for r in args.label_ratios
        ]
        plan = BenchPlan(
            groups=groups, algorithms=args.algorithms, out_dir=args.out, seed=args.seed,
            time_limit=args.time_limit, repeats=args.repeats, workers=workers,
            solver=_solver_config(args),
        )
        instances = None
    _, summaries = run_bench(plan, instances)
    print(render_markdown(summaries), end="")
    return EXIT_OK


def cmd_import(args) -> int:
    args.out.mkdir(parents=True, exist_ok=True)
    count = 0
    for path in args.files:
        for i, inst in enumerate(import_official(path, k=args.k)):
            write_instance(inst, args.out / f"{path.stem}_{i:02d}.klsf")
            count += 1
    print(f"imported {count} instances into {args.out}")
    return EXIT_OK


COMMANDS = {
    "generate": cmd_generate,
    "solve": cmd_solve,
    "bench": cmd_bench,
    "import-official": cmd_import,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except InstanceFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ValueError, NoValidKError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
