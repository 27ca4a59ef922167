"""Exhaustive reference computations for small instances"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import List, Optional

import networkx as nx
import numpy as np

from src.config import ORACLE_PATH_CAP, TOLERANCE
from src.core.capacity import Capacity, ProbabilityVector, dual, entropy, membership, require_concave
from src.core.choquet import CedEvaluator, DisutilityFn
from src.core.graph import Path, StateSpaceGraph
from src.errors import NoSolutionError, OracleLimitError
from src.search.solution import SearchStats, Solution

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EnumeratedPath:
    path: Path
    cost: np.ndarray
    c_p: Optional[float] = None
    psi: Optional[float] = None

    def sort_key(self):
        return self.path.nodes, self.path.arcs


@dataclass
class EnumerationReport:
    """Every simple solution path of a graph with its cost vector (and c_p, ψ when requested)"""

    paths: List[EnumeratedPath] = field(default_factory=list)
    optimum: Optional[EnumeratedPath] = None

    def __len__(self) -> int:
        return len(self.paths)

    def ranked(self) -> List[EnumeratedPath]:
        """Paths by increasing c_p, ties by node sequence"""
        if any(entry.c_p is None for entry in self.paths):
            raise ValueError("ranking needs c_p values; enumerate with a probability vector")
        return sorted(self.paths, key=lambda entry: (entry.c_p, entry.sort_key()))


def to_multidigraph(graph: StateSpaceGraph) -> nx.MultiDiGraph:
    """networkx view of the graph; edge keys are arc ids"""
    G = nx.MultiDiGraph()
    G.add_nodes_from(range(graph.num_nodes))
    for arc, (tail, head) in enumerate(zip(graph.tails.tolist(), graph.heads.tolist())):
        G.add_edge(tail, head, key=arc)
    return G


def enumerate_solution_paths(
    graph: StateSpaceGraph,
    cap: int = ORACLE_PATH_CAP,
    capacity: Optional[Capacity] = None,
    disutility: Optional[DisutilityFn] = None,
    p: Optional[ProbabilityVector] = None,
) -> EnumerationReport:
    """
    Enumerate the simple paths from s to the goal set

    A path stops at the first goal it reaches. Parallel arcs give distinct
    paths. Raises OracleLimitError once more than cap paths are found.
    """
    evaluator = None
    if capacity is not None and disutility is not None:
        evaluator = CedEvaluator(capacity, disutility.with_scale(graph.default_scale()))
    arc_scalar = graph.costs @ p.p if p is not None else None

    s = graph.start
    if graph.is_goal(s):
        found = [((s,), ())]
    else:
        edge_paths = (
            edges for edges in nx.all_simple_edge_paths(to_multidigraph(graph), s, list(graph.goals))
            if not any(graph.is_goal(head) for _, head, _ in edges[:-1])
        )
        found = [
            ((s,) + tuple(head for _, head, _ in edges), tuple(key for _, _, key in edges))
            for edges in itertools.islice(edge_paths, cap + 1)
        ]
        if len(found) > cap:
            logger.warning(f"Simple path enumeration exceeded the cap of {cap} paths")
            raise OracleLimitError(f"more than {cap} simple solution paths; instance too large for the oracle")

    report = EnumerationReport()
    for node_seq, arc_seq in found:
        cost = graph.costs[list(arc_seq)].sum(axis=0) if arc_seq else np.zeros(graph.m)
        c_p = float(arc_scalar[list(arc_seq)].sum()) if arc_scalar is not None else None
        psi = evaluator.psi(cost) if evaluator is not None else None
        report.paths.append(EnumeratedPath(Path(node_seq, arc_seq), cost, c_p, psi))

    if evaluator is not None and report.paths:
        report.optimum = min(report.paths, key=lambda entry: (entry.psi, entry.sort_key()))
    logger.debug(f"Enumerated {len(report)} simple solution paths")
    return report


def brute_force_optimum(
    graph: StateSpaceGraph,
    capacity: Capacity,
    disutility: DisutilityFn,
    cap: int = ORACLE_PATH_CAP,
) -> Solution:
    """ψ-optimal simple solution path by exhaustive enumeration"""
    report = enumerate_solution_paths(graph, cap, capacity, disutility)
    if report.optimum is None:
        raise NoSolutionError("graph has no solution path")
    best = report.optimum
    return Solution(
        psi=best.psi,
        cost=best.cost,
        path=best.path,
        algorithm='oracle',
        stats=SearchStats(paths_enumerated=len(report)),
    )


def core_grid_max_entropy(v: Capacity, resolution: float = 1e-2, slack: float = TOLERANCE) -> ProbabilityVector:
    """
    Maximum-entropy point of the simplex grid inside core(v̄)

    Args:
        v: concave capacity with m ≤ 3
        resolution: grid step, 1/resolution must be an integer
        slack: tolerance on the core constraints; grid points miss irrational
            vertices, so coarse grids need a slack of about resolution / 2

    Returns:
        The grid point with the largest entropy
    """
    require_concave(v)
    if v.m > 3:
        raise OracleLimitError(f"grid search supports m ≤ 3, got m={v.m}")
    steps = int(round(1.0 / resolution))
    if steps < 1 or abs(steps * resolution - 1.0) > 1e-9:
        raise ValueError(f"1/resolution must be a positive integer, got resolution={resolution}")

    upper = v.values
    lower = dual(v).values
    members = membership(v.m)

    best, best_entropy = None, -np.inf
    for head in itertools.product(range(steps + 1), repeat=v.m - 1):
        last = steps - sum(head)
        if last < 0:
            continue
        point = np.array(head + (last,), dtype=float) / steps
        events = point @ members
        if np.any(events > upper + slack) or np.any(events < lower - slack):
            continue
        candidate = ProbabilityVector(point)
        h = entropy(candidate)
        if h > best_entropy:
            best, best_entropy = candidate, h

    if best is None:
        raise OracleLimitError(f"no grid point at resolution {resolution} lies in the core")
    return best
