# %% [markdown]
# # Solver comparison
#
# Runs the benchmark harness on a small plan and prints the group table.
# The same table comes out of `klsf bench`; the raw runs are in
# `results/results.csv`. With ℓ ≥ n the automatic budget is above 1, which
# is where the solvers start to differ.

# %%
from pathlib import Path

from klsf.bench import BenchPlan, GroupSpec, render_markdown, run_bench

plan = BenchPlan(
    groups=[GroupSpec(n, int(n * r), 0.5, None, 3) for n in (40, 60) for r in (1.0, 1.25)],
    algorithms=["mvca", "exact", "pilot", "ga", "grasp", "bvns"],
    out_dir=Path("results"),
    time_limit=2.0,
)
rows, summaries = run_bench(plan)
print(render_markdown(summaries))

# %% [markdown]
# Exact cells read NF when a run hits the time limit before proving optimality.
# BVNS can also stall: shaking at q ≤ |C| only removes labels, and the greedy
# refill often rebuilds the same local optimum, while GRASP restarts from a new
# random first label every iteration.
