"""Optimistic cost-to-go tables for the search algorithms"""

import heapq
import logging
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.core.capacity import ProbabilityVector
from src.core.graph import StateSpaceGraph
from src.errors import ConfigurationError, DimensionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HeuristicTables:
    """Per-node lower bounds: h_vec[n, i] per scenario and h_scalar[n] for c_p"""

    h_vec: np.ndarray
    h_scalar: np.ndarray
    gamma: float = 1.0
    seconds: float = 0.0

    @property
    def num_nodes(self) -> int:
        return self.h_vec.shape[0]


def _backward_dijkstra(graph: StateSpaceGraph, weights: np.ndarray) -> np.ndarray:
    """Cheapest cost from every node to the goal set, inf when unreachable"""
    dist = np.full(graph.num_nodes, np.inf)
    done = np.zeros(graph.num_nodes, dtype=bool)
    heap = []
    for goal in graph.goals:
        dist[goal] = 0.0
        heap.append((0.0, goal))
    heapq.heapify(heap)

    while heap:
        d, node = heapq.heappop(heap)
        if done[node]:
            continue
        done[node] = True
        arcs = graph.in_arcs(node)
        tails = graph.tails[arcs]
        candidates = d + weights[arcs]
        improved = candidates < dist[tails]
        # parallel arcs may repeat a tail, so recheck one by one
        for tail, cand in zip(tails[improved].tolist(), candidates[improved].tolist()):
            if cand < dist[tail]:
                dist[tail] = cand
                heapq.heappush(heap, (cand, tail))
    return dist


def per_scenario_bounds(graph: StateSpaceGraph) -> np.ndarray:
    """h*_i(n): exact scenario-i shortest path cost from n to the goals"""
    table = np.empty((graph.num_nodes, graph.m))
    for i in range(graph.m):
        table[:, i] = _backward_dijkstra(graph, graph.costs[:, i])
    return table


def scalar_bound(graph: StateSpaceGraph, p: ProbabilityVector) -> np.ndarray:
    """h̄*(n): exact c_p shortest path cost from n to the goals"""
    if p.m != graph.m:
        raise DimensionError(f"graph has m={graph.m} but probability vector has m={p.m}")
    return _backward_dijkstra(graph, graph.costs @ p.p)


def apply_gamma(tables: HeuristicTables, gamma: float) -> HeuristicTables:
    """Scale every bound by gamma in (0, 1]; infinite entries stay infinite"""
    if not 0.0 < gamma <= 1.0:
        raise ConfigurationError(f"gamma must lie in (0, 1], got {gamma}")
    if gamma == 1.0:
        return tables
    return HeuristicTables(
        h_vec=tables.h_vec * gamma,
        h_scalar=tables.h_scalar * gamma,
        gamma=tables.gamma * gamma,
        seconds=tables.seconds,
    )


def build_heuristics(
    graph: StateSpaceGraph,
    p: ProbabilityVector,
    gamma: float = 1.0,
    h_vec: Optional[np.ndarray] = None,
) -> HeuristicTables:
    """
    Compute both tables and scale them by gamma

    Args:
        graph: the state space graph
        p: the core probability used for c_p
        gamma: heuristic scale factor in (0, 1]
        h_vec: precomputed exact per-scenario table (it does not depend on p)

    Returns:
        HeuristicTables with the wall time spent in `seconds`
    """
    started = time.perf_counter()
    if h_vec is None:
        h_vec = per_scenario_bounds(graph)
    h_scalar = scalar_bound(graph, p)
    tables = HeuristicTables(h_vec=h_vec, h_scalar=h_scalar, gamma=1.0)
    tables = apply_gamma(tables, gamma)
    seconds = time.perf_counter() - started
    logger.debug(f"Heuristics for {graph.num_nodes} nodes computed in {seconds:.3f}s (gamma={gamma})")
    return HeuristicTables(tables.h_vec, tables.h_scalar, tables.gamma, seconds)
