"""Capacities, Choquet evaluation, graphs and heuristics"""

from .capacity import (
    Capacity,
    MobiusCapacity,
    ProbabilityVector,
    ScenarioSet,
    capacity_additive,
    capacity_from_mobius,
    capacity_v1,
    capacity_vacuous,
    core_contains,
    dual,
    entropy,
    is_concave,
    is_convex,
    max_entropy,
    shapley,
)
from .choquet import CedEvaluator, DisutilityFn, ced, choquet_integral, linear_lower_bound, scalarize
from .graph import Label, Path, StateSpaceGraph, nd_filter, pareto_dominates, path_cost
from .heuristics import HeuristicTables, apply_gamma, build_heuristics, per_scenario_bounds, scalar_bound

__all__ = [
    'Capacity', 'MobiusCapacity', 'ProbabilityVector', 'ScenarioSet',
    'capacity_additive', 'capacity_from_mobius', 'capacity_v1', 'capacity_vacuous',
    'core_contains', 'dual', 'entropy', 'is_concave', 'is_convex', 'max_entropy', 'shapley',
    'CedEvaluator', 'DisutilityFn', 'ced', 'choquet_integral', 'linear_lower_bound', 'scalarize',
    'Label', 'Path', 'StateSpaceGraph', 'nd_filter', 'pareto_dominates', 'path_cost',
    'HeuristicTables', 'apply_gamma', 'build_heuristics', 'per_scenario_bounds', 'scalar_bound',
]
