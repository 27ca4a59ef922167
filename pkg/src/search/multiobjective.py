"""Label-setting multiobjective best-first search for ψ-optimal paths

Labels are attached to detected subpaths. Two pruning rules focus the search:
Rule 1 drops a label whose cost vector is strictly Pareto-dominated at its
node; Rule 2 drops a label whose bound max{ψ(f), w(c_p(P) + h̄(n))} already
reaches the incumbent value λ.
"""

import heapq
import logging
import time
from typing import Dict, List, Optional

import numpy as np

from src.core.capacity import Capacity, ProbabilityVector
from src.core.choquet import CedEvaluator, DisutilityFn
from src.core.graph import Label, StateSpaceGraph, strictly_dominates
from src.core.heuristics import HeuristicTables
from src.errors import NoSolutionError
from src.search.solution import SearchStats, Solution, check_solver_inputs

logger = logging.getLogger(__name__)


class MultiobjectiveSearch:
    """One ψ-OPT solve over a fixed graph, capacity, disutility and bound vector"""

    def __init__(
        self,
        graph: StateSpaceGraph,
        capacity: Capacity,
        disutility: DisutilityFn,
        p: ProbabilityVector,
        tables: HeuristicTables,
        rule1: bool = True,
        rule2: bool = True,
        label_retention: bool = True,
    ):
        """
        Args:
            rule1: prune labels strictly Pareto-dominated at their node
            rule2: prune labels whose bound reaches λ, and stop when the best open key does
            label_retention: keep every non-dominated label per node; when False only
                the label with the smallest ψ(g) is kept (naive local pruning)
        """
        check_solver_inputs(graph, capacity, disutility, p, tables)
        self.graph = graph
        self.p = p
        self.tables = tables
        self.disutility = disutility
        self.evaluator = CedEvaluator(capacity, disutility)
        self.rule1 = rule1
        self.rule2 = rule2
        self.label_retention = label_retention
        self.arc_scalar = graph.costs @ p.p

        self.stats = SearchStats(heuristic_seconds=tables.seconds)
        self._labels: Dict[int, List[Label]] = {}
        self._open: list = []
        self._seq = 0
        self.lam = np.inf
        self.incumbent: Optional[Label] = None

    def _push(self, label: Label, key: float, psi_f: float) -> None:
        heapq.heappush(self._open, (key, psi_f, label.depth, label.seq, label))

    def _new_label(self, node, g, f, gbar, parent=None, arc=None) -> Label:
        self._seq += 1
        return Label(node, g, f, gbar, parent, arc, seq=self._seq)

    def _admit(self, label: Label) -> bool:
        """Record a new label in L(n); False when it is dropped"""
        at_node = self._labels.setdefault(label.node, [])

        if not self.label_retention:
            if at_node:
                kept = at_node[0]
                if self.evaluator.psi(kept.g) <= self.evaluator.psi(label.g):
                    self.stats.pruned_rule1 += 1
                    return False
                if not kept.expanded:
                    kept.alive = False
                self.stats.pruned_rule1 += 1
                at_node.clear()
            at_node.append(label)
            return True

        for other in at_node:
            if np.array_equal(other.g, label.g):
                self.stats.duplicates_merged += 1
                return False
            if self.rule1 and strictly_dominates(other.g, label.g):
                self.stats.pruned_rule1 += 1
                return False

        if self.rule1:
            survivors = []
            for other in at_node:
                if strictly_dominates(label.g, other.g):
                    if not other.expanded:
                        other.alive = False
                        self.stats.pruned_rule1 += 1
                else:
                    survivors.append(other)
            at_node[:] = survivors
        at_node.append(label)
        return True

    def _expand(self, label: Label) -> None:
        graph, tables = self.graph, self.tables
        arcs = graph.out_arcs(label.node)
        heads = graph.heads[arcs]
        keep = np.isfinite(tables.h_scalar[heads]) & ~np.isin(heads, label.path)
        arcs, heads = arcs[keep], heads[keep]
        if arcs.size == 0:
            return

        g_children = label.g + graph.costs[arcs]
        f_children = g_children + tables.h_vec[heads]
        psi_f = self.evaluator.psi_batch(f_children)
        gbar_children = label.gbar + self.arc_scalar[arcs]
        bounds = self.disutility(gbar_children + tables.h_scalar[heads])
        keys = np.maximum(psi_f, bounds)

        for k in range(arcs.size):
            if self.rule2 and keys[k] >= self.lam:
                self.stats.pruned_rule2 += 1
                continue
            child = self._new_label(int(heads[k]), g_children[k], f_children[k],
                                    float(gbar_children[k]), label, int(arcs[k]))
            if self._admit(child):
                self.stats.labels_created += 1
                self._push(child, float(keys[k]), float(psi_f[k]))

    def solve(self) -> Solution:
        started = time.perf_counter()
        graph, tables = self.graph, self.tables
        s = graph.start
        if not np.isfinite(tables.h_scalar[s]):
            raise NoSolutionError(f"no goal is reachable from start node {s}")

        root = self._new_label(s, np.zeros(graph.m), tables.h_vec[s].copy(), 0.0)
        psi_root = self.evaluator.psi(root.f)
        self._admit(root)
        self.stats.labels_created += 1
        self._push(root, max(psi_root, self.evaluator.bound(tables.h_scalar[s])), psi_root)

        while self._open:
            key, _, _, _, label = heapq.heappop(self._open)
            if not label.alive:
                continue
            if self.rule2 and key >= self.lam:
                self.stats.pruned_rule2 += 1 + sum(1 for entry in self._open if entry[-1].alive)
                break

            label.expanded = True
            self.stats.labels_expanded += 1

            if graph.is_goal(label.node):
                psi_g = self.evaluator.psi(label.g)
                if psi_g < self.lam:
                    self.lam = psi_g
                    self.incumbent = label
                    self.stats.solutions_found += 1
                    logger.debug(f"New incumbent psi={psi_g:.6g} cost={label.g.tolist()}")
                continue

            self._expand(label)

        self.stats.solve_seconds = time.perf_counter() - started
        if self.incumbent is None:
            raise NoSolutionError("search finished without a solution path")

        logger.debug(f"Multiobjective search stats: {self.stats.to_dict()}")
        return Solution(
            psi=float(self.lam),
            cost=self.incumbent.g.copy(),
            path=self.incumbent.to_path(),
            algorithm='mo',
            stats=self.stats,
        )


def solve_mo(
    graph: StateSpaceGraph,
    capacity: Capacity,
    disutility: DisutilityFn,
    p: ProbabilityVector,
    tables: HeuristicTables,
    rule1: bool = True,
    rule2: bool = True,
    label_retention: bool = True,
) -> Solution:
    """Return a ψ-optimal solution path by multiobjective search"""
    search = MultiobjectiveSearch(graph, capacity, disutility, p, tables, rule1, rule2, label_retention)
    return search.solve()
