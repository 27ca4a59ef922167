"""Search results and shared solver preconditions"""

from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from src.core.capacity import Capacity, ProbabilityVector, core_contains, is_concave
from src.core.choquet import DisutilityFn
from src.core.graph import Path, StateSpaceGraph
from src.core.heuristics import HeuristicTables
from src.errors import CapacityError, DimensionError, DisutilityError


@dataclass
class SearchStats:
    labels_created: int = 0
    labels_expanded: int = 0
    pruned_rule1: int = 0
    pruned_rule2: int = 0
    duplicates_merged: int = 0
    solutions_found: int = 0
    paths_enumerated: int = 0
    stall_recoveries: int = 0
    solve_seconds: float = 0.0
    heuristic_seconds: float = 0.0

    def to_dict(self, timings: bool = True) -> Dict[str, Any]:
        stats = asdict(self)
        if not timings:
            stats.pop('solve_seconds')
            stats.pop('heuristic_seconds')
        return stats


@dataclass
class Solution:
    """A ψ-optimal solution path and how the search got there"""

    psi: float
    cost: np.ndarray
    path: Path
    algorithm: str
    stats: SearchStats = field(default_factory=SearchStats)
    emitted: List[Dict[str, Any]] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        doc = {
            'algorithm': self.algorithm,
            'psi': self.psi,
            'cost': self.cost.tolist(),
            'path': list(self.path.nodes),
            'stats': self.stats.to_dict(),
        }
        if self.emitted:
            doc['emitted'] = self.emitted
        return doc


def check_solver_inputs(
    graph: StateSpaceGraph,
    capacity: Capacity,
    disutility: DisutilityFn,
    p: ProbabilityVector,
    tables: Optional[HeuristicTables] = None,
) -> None:
    """Preconditions shared by both exact algorithms"""
    if capacity.m != graph.m or p.m != graph.m:
        raise DimensionError(f"graph m={graph.m}, capacity m={capacity.m}, probability m={p.m}")
    if not is_concave(capacity):
        raise CapacityError("solvers require a concave capacity")
    if not disutility.is_convex:
        raise DisutilityError(f"solvers require a convex disutility, got {disutility}")
    if not disutility.is_resolved:
        raise DisutilityError("disutility scale M must be resolved before solving")
    if not core_contains(capacity, p):
        raise CapacityError(f"{p} is outside core(v̄)")
    if tables is not None and tables.num_nodes != graph.num_nodes:
        raise DimensionError(f"heuristic tables cover {tables.num_nodes} nodes, graph has {graph.num_nodes}")
