"""Solvers for the k-labelled spanning forest problem.

Given an undirected graph with labelled edges and a budget ``k``, choose at
most ``k`` labels so that the edges carrying them leave as few connected
components as possible.
"""

from .constructive import FIRST_MIN, GreedyTieRule, mvca, mvca_extend
from .exact import ExactConfig, ExactResult, brute_force_oracle, exact_solve
from .graph import (
    LabeledGraph,
    LabelSubset,
    SpanningForest,
    UnionFind,
    comp_count,
    extract_forest,
    hamming_distance,
)
from .instances import (
    Instance,
    InstanceFormatError,
    InstanceSpec,
    NoValidKError,
    determine_k,
    generate_graph,
    generate_instance,
    read_instance,
    write_instance,
)
from .metaheuristics import (
    DEFAULT_STRATEGY,
    STRATEGY_GRID,
    GaConfig,
    QmaxKind,
    QmaxStrategy,
    RunRecord,
    StoppingCondition,
    bvns,
    ga,
    grasp,
    local_search,
    pilot_method,
    qmax_eval,
    shake,
)

__version__ = "0.1.0"
