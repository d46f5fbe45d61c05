# %% [markdown]
# # Quickstart
#
# Build a small labelled graph, count the components of a label subset,
# and compare the greedy, the exact search and BVNS on a budget of k labels.

# %%
from klsf import (
    InstanceSpec,
    LabeledGraph,
    LabelSubset,
    StoppingCondition,
    bvns,
    comp_count,
    exact_solve,
    extract_forest,
    generate_instance,
    mvca,
)

# %% [markdown]
# Four vertices, three labels. Label 1 joins 1-2 and 3-4, label 2 joins 2-3,
# label 3 joins 1-3.

# %%
g = LabeledGraph(4, ((1, 2, 1), (3, 4, 1), (2, 3, 2), (1, 3, 3)), 3)
for labels in ({1}, {2}, {1, 2}, {2, 3}):
    print(sorted(labels), comp_count(g, LabelSubset(labels)))

# %% [markdown]
# A forest witnessing the count: one spanning tree per component.

# %%
forest = extract_forest(g, LabelSubset({1, 2}))
print(forest.edges, forest.tree_count)

# %% [markdown]
# A random instance. The budget k is picked automatically so that the greedy
# solution does not connect the graph.

# %%
inst = generate_instance(InstanceSpec(n=16, label_count=10, density=0.25, seed=3))
print("k =", inst.k, "edges =", inst.graph.m)

greedy = mvca(inst.graph, inst.k)
exact = exact_solve(inst.graph, inst.k)
run = bvns(inst.graph, inst.k, stop=StoppingCondition(max_time=1.0), seed=0)
print("greedy", greedy.sorted(), greedy.comp)
print("exact ", exact.solution.sorted(), exact.solution.comp, f"{exact.nodes} nodes")
print("bvns  ", run.best.sorted(), run.objective, f"{run.time_to_best * 1e3:.1f} ms to best")
