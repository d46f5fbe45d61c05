# %% [markdown]
# # Shaking amplitude
#
# BVNS shakes the incumbent at Hamming distance q = 1, 2, ... up to q_max.
# The fifteen variants below set q_max as a constant, as a multiple of k, or
# as a multiple of the incumbent's size. Small multiples of the size leave
# almost nothing to explore.

# %%
import numpy as np

from klsf import STRATEGY_GRID, InstanceSpec, StoppingCondition, bvns, generate_instance, qmax_eval

SECONDS = 2.0  # raise to 60 for the full-length study
N, LABELS, INSTANCES = 100, 100, 3

# %%
for s in STRATEGY_GRID:
    print(f"{s.name:10s}", [qmax_eval(s, k=3, current_size=size) for size in (1, 2, 3)])

# %%
instances = [generate_instance(InstanceSpec(N, LABELS, 0.5, seed)) for seed in range(INSTANCES)]
print("k per instance:", [inst.k for inst in instances])

rows = []
for s in STRATEGY_GRID:
    objs = [
        bvns(inst.graph, inst.k, s, StoppingCondition(max_time=SECONDS), seed=i).objective
        for i, inst in enumerate(instances)
    ]
    rows.append((s.name, float(np.mean(objs))))

for name, mean in sorted(rows, key=lambda r: r[1]):
    print(f"{name:10s} {mean:5.2f}")
