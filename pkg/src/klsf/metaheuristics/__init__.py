from .bvns import (
    DEFAULT_STRATEGY,
    STRATEGY_GRID,
    QmaxKind,
    QmaxStrategy,
    bvns,
    local_search,
    qmax_eval,
    shake,
)
from .common import RunRecord, StoppingCondition
from .ga import GaConfig, crossover, ga, mutate
from .grasp import grasp, grasp_construct
from .pilot import pilot_method

__all__ = [
    "DEFAULT_STRATEGY",
    "STRATEGY_GRID",
    "GaConfig",
    "QmaxKind",
    "QmaxStrategy",
    "RunRecord",
    "StoppingCondition",
    "bvns",
    "crossover",
    "ga",
    "grasp",
    "grasp_construct",
    "local_search",
    "mutate",
    "pilot_method",
    "qmax_eval",
    "shake",
]
