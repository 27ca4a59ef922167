"""
Ranking search: enumerate solution paths by increasing c_p and keep the ψ incumbent

For p in core(v̄) and convex w, w(c_p(P)) never exceeds ψ(c(P)). Solution
paths are produced in order of c_p by an A* variant with one label per
detected path; the enumeration stops as soon as the next selected label has
w(ḡ + h̄(n)) ≥ λ, since no later path can beat the incumbent.

Nodes move between an open state and a closed state C. A closed node holds
exactly one expanded label that is not yet part of an emitted solution path;
labels selected at a closed node wait in a per-node deferred list until the
node is reopened by an emitted path that crosses it.
"""

import heapq
import logging
import time
from typing import Dict, List, Optional, Set

import numpy as np

from src.core.capacity import Capacity, ProbabilityVector
from src.core.choquet import CedEvaluator, DisutilityFn
from src.core.graph import Label, StateSpaceGraph
from src.core.heuristics import HeuristicTables
from src.errors import NoSolutionError
from src.search.solution import SearchStats, Solution, check_solver_inputs

logger = logging.getLogger(__name__)


class RankingSearch:
    """One ψ-OPT solve by c_p ranking"""

    def __init__(
        self,
        graph: StateSpaceGraph,
        capacity: Capacity,
        disutility: DisutilityFn,
        p: ProbabilityVector,
        tables: HeuristicTables,
        trace: bool = False,
    ):
        check_solver_inputs(graph, capacity, disutility, p, tables)
        self.graph = graph
        self.tables = tables
        self.evaluator = CedEvaluator(capacity, disutility)
        self.disutility = disutility
        self.trace = trace
        self.arc_scalar = graph.costs @ p.p

        self.stats = SearchStats(heuristic_seconds=tables.seconds)
        self.closed: Set[int] = set()
        self.deferred: Dict[int, List[Label]] = {}
        self.emitted: List[dict] = []
        self._open: list = []
        self._seq = 0
        self.lam = np.inf
        self.incumbent: Optional[Label] = None

    def _bound(self, label: Label) -> float:
        return label.gbar + float(self.tables.h_scalar[label.node])

    def _push(self, label: Label) -> None:
        heapq.heappush(self._open, (self._bound(label), label.depth, label.seq, label))

    def _reopen(self, node: int) -> None:
        self.closed.discard(node)
        for label in self.deferred.pop(node, []):
            if label.alive:
                self._push(label)

    def _collect_garbage(self) -> None:
        """Drop deferred labels whose bound reached the new λ"""
        for node in list(self.deferred):
            kept = []
            for label in self.deferred[node]:
                if self.evaluator.bound(self._bound(label)) >= self.lam:
                    label.alive = False
                    self.stats.pruned_rule2 += 1
                else:
                    kept.append(label)
            if kept:
                self.deferred[node] = kept
            else:
                del self.deferred[node]

    def _recover(self) -> bool:
        """
        Reopen every closed node when only deferred labels can still beat λ

        A closed node whose expanded label has no simple extension to a goal
        is never reopened by an emitted path; its deferred labels would be lost.
        """
        self._collect_garbage()
        if not self.deferred:
            return False
        self.stats.stall_recoveries += 1
        logger.debug(f"Reopening {len(self.closed)} closed nodes with {sum(len(v) for v in self.deferred.values())} "
                     f"deferred labels (lambda={self.lam:.6g})")
        for node in list(self.closed) + list(self.deferred):
            self._reopen(node)
        return bool(self._open)

    def _select(self) -> Optional[Label]:
        """argmin of ḡ + h̄ over labels at open nodes, None when the search stops"""
        while True:
            while self._open:
                bound, _, _, label = heapq.heappop(self._open)
                if not label.alive:
                    continue
                if label.node in self.closed:
                    self.deferred.setdefault(label.node, []).append(label)
                    continue
                if self.evaluator.bound(bound) < self.lam:
                    return label
                # every other open label is at least as far from beating λ
                label.alive = False
                self.stats.pruned_rule2 += 1
                for entry in self._open:
                    if entry[-1].alive and entry[-1].node not in self.closed:
                        entry[-1].alive = False
                        self.stats.pruned_rule2 += 1
                break
            if not self._recover():
                return None

    def _emit(self, label: Label) -> None:
        self.stats.paths_enumerated += 1
        psi_g = self.evaluator.psi(label.g)
        if self.trace:
            self.emitted.append({
                'path': list(label.path),
                'cost': label.g.tolist(),
                'c_p': label.gbar,
                'psi': psi_g,
            })
        if psi_g < self.lam:
            self.lam = psi_g
            self.incumbent = label
            self.stats.solutions_found += 1
            logger.debug(f"New incumbent psi={psi_g:.6g} c_p={label.gbar:.6g} after "
                         f"{self.stats.paths_enumerated} paths")
            self._collect_garbage()
        for node in label.path:
            self._reopen(node)

    def _expand(self, label: Label) -> None:
        graph, tables = self.graph, self.tables
        arcs = graph.out_arcs(label.node)
        heads = graph.heads[arcs]
        keep = np.isfinite(tables.h_scalar[heads]) & ~np.isin(heads, label.path)
        arcs, heads = arcs[keep], heads[keep]
        if arcs.size == 0:
            return

        g_children = label.g + graph.costs[arcs]
        gbar_children = label.gbar + self.arc_scalar[arcs]
        bounds = self.disutility(gbar_children + tables.h_scalar[heads])
        for k in range(arcs.size):
            if bounds[k] >= self.lam:
                self.stats.pruned_rule2 += 1
                continue
            node = int(heads[k])
            self._seq += 1
            child = Label(node, g_children[k], g_children[k], float(gbar_children[k]),
                          label, int(arcs[k]), seq=self._seq)
            self.stats.labels_created += 1
            self._push(child)

    def solve(self) -> Solution:
        started = time.perf_counter()
        s = self.graph.start
        if not np.isfinite(self.tables.h_scalar[s]):
            raise NoSolutionError(f"no goal is reachable from start node {s}")

        root = Label(s, np.zeros(self.graph.m), np.zeros(self.graph.m), 0.0)
        self.stats.labels_created += 1
        self._push(root)

        while True:
            label = self._select()
            if label is None:
                break
            self.closed.add(label.node)
            label.expanded = True
            self.stats.labels_expanded += 1
            if self.graph.is_goal(label.node):
                self._emit(label)
            else:
                self._expand(label)

        self.stats.solve_seconds = time.perf_counter() - started
        if self.incumbent is None:
            raise NoSolutionError("ranking finished without a solution path")

        logger.debug(f"Ranking search stats: {self.stats.to_dict()}")
        return Solution(
            psi=float(self.lam),
            cost=self.incumbent.g.copy(),
            path=self.incumbent.to_path(),
            algorithm='rank',
            stats=self.stats,
            emitted=self.emitted,
        )


def solve_rank(
    graph: StateSpaceGraph,
    capacity: Capacity,
    disutility: DisutilityFn,
    p: ProbabilityVector,
    tables: HeuristicTables,
    trace: bool = False,
) -> Solution:
    """Return a ψ-optimal solution path by c_p ranking; trace keeps every emitted path"""
    return RankingSearch(graph, capacity, disutility, p, tables, trace).solve()
