"""Exhaustive ground truth for small instances"""

from .enumeration import (
    EnumeratedPath,
    EnumerationReport,
    brute_force_optimum,
    core_grid_max_entropy,
    enumerate_solution_paths,
    to_multidigraph,
)

__all__ = [
    'EnumeratedPath',
    'EnumerationReport',
    'brute_force_optimum',
    'core_grid_max_entropy',
    'enumerate_solution_paths',
    'to_multidigraph',
]
