"""State space graph with scenario-dependent arc costs"""

import logging
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional, Sequence, Set, Tuple

import numpy as np

from src.errors import CostError, DimensionError, GraphError

logger = logging.getLogger(__name__)

ArcTuple = Tuple[int, int, Sequence[float]]


class StateSpaceGraph:
    """
    Explicit graph G = (N, A) with a cost vector c(a) ∈ R+^m on every arc

    Nodes are 0..num_nodes-1. Arcs are kept in forward-star order (sorted by
    tail, insertion order among equal tails); an arc id is its position in
    that order. Parallel arcs are allowed. A reverse-star view is built on
    first use for backward shortest paths.
    """

    def __init__(
        self,
        num_nodes: int,
        m: int,
        arcs: Iterable[ArcTuple] = (),
        start: int = 0,
        goals: Iterable[int] = (),
    ):
        arcs = list(arcs)
        rows = []
        for index, (tail, head, arc_costs) in enumerate(arcs):
            row = np.asarray(arc_costs, dtype=float).reshape(-1)
            if row.size != m:
                raise DimensionError(f"arc {index} ({tail} -> {head}) has {row.size} costs, expected {m}")
            rows.append(row)
        tails = np.array([a[0] for a in arcs], dtype=np.int64)
        heads = np.array([a[1] for a in arcs], dtype=np.int64)
        costs = np.array(rows, dtype=float) if rows else np.zeros((0, int(m)))
        self._setup(num_nodes, m, tails, heads, costs, start, goals)

    @classmethod
    def from_arrays(
        cls,
        num_nodes: int,
        tails: np.ndarray,
        heads: np.ndarray,
        costs: np.ndarray,
        start: int,
        goals: Iterable[int],
    ) -> 'StateSpaceGraph':
        graph = cls.__new__(cls)
        costs = np.asarray(costs, dtype=float)
        if costs.ndim != 2:
            raise DimensionError(f"arc costs must be a 2-d array, got shape {costs.shape}")
        graph._setup(num_nodes, costs.shape[1], np.asarray(tails, dtype=np.int64),
                     np.asarray(heads, dtype=np.int64), costs, start, goals)
        return graph

    def _setup(self, num_nodes, m, tails, heads, costs, start, goals):
        num_nodes, m = int(num_nodes), int(m)
        if num_nodes < 1:
            raise GraphError(f"graph needs at least one node, got {num_nodes}")
        if m < 1:
            raise DimensionError(f"scenario count must be positive, got {m}")
        if costs.shape != (tails.size, m) or heads.size != tails.size:
            raise DimensionError(f"arc cost table has shape {costs.shape}, expected ({tails.size}, {m})")
        if tails.size and (tails.min() < 0 or tails.max() >= num_nodes or heads.min() < 0 or heads.max() >= num_nodes):
            raise GraphError(f"arc endpoint outside 0..{num_nodes - 1}")
        if not np.all(np.isfinite(costs)) or np.any(costs < 0.0):
            bad = int(np.argmax(~np.isfinite(costs).all(axis=1) | (costs < 0.0).any(axis=1)))
            raise CostError(f"arc {bad} has negative or non-finite costs")

        goals = sorted({int(g) for g in goals})
        if not goals:
            raise GraphError("goals must be non-empty")
        if not 0 <= int(start) < num_nodes:
            raise GraphError(f"start node {start} outside 0..{num_nodes - 1}")
        if goals[0] < 0 or goals[-1] >= num_nodes:
            raise GraphError(f"goal node outside 0..{num_nodes - 1}")

        order = np.argsort(tails, kind='stable')
        self._tails = tails[order]
        self._heads = heads[order]
        self._costs = costs[order]
        for array in (self._tails, self._heads, self._costs):
            array.flags.writeable = False
        self._offsets = np.searchsorted(self._tails, np.arange(num_nodes + 1), side='left')
        self._num_nodes = num_nodes
        self._m = m
        self._start = int(start)
        self._goals = tuple(goals)
        self._goal_mask = np.zeros(num_nodes, dtype=bool)
        self._goal_mask[list(goals)] = True
        self._reverse = None

    @property
    def num_nodes(self) -> int:
        return self._num_nodes

    @property
    def num_arcs(self) -> int:
        return int(self._tails.size)

    @property
    def m(self) -> int:
        return self._m

    @property
    def start(self) -> int:
        return self._start

    @property
    def goals(self) -> Tuple[int, ...]:
        return self._goals

    @property
    def goal_mask(self) -> np.ndarray:
        return self._goal_mask

    @property
    def tails(self) -> np.ndarray:
        return self._tails

    @property
    def heads(self) -> np.ndarray:
        return self._heads

    @property
    def costs(self) -> np.ndarray:
        return self._costs

    def is_goal(self, node: int) -> bool:
        return bool(self._goal_mask[node])

    def out_arcs(self, node: int) -> np.ndarray:
        """Ids of the arcs leaving node"""
        return np.arange(self._offsets[node], self._offsets[node + 1])

    def in_arcs(self, node: int) -> np.ndarray:
        """Ids of the arcs entering node"""
        if self._reverse is None:
            order = np.argsort(self._heads, kind='stable')
            offsets = np.searchsorted(self._heads[order], np.arange(self._num_nodes + 1), side='left')
            self._reverse = (order, offsets)
        order, offsets = self._reverse
        return order[offsets[node]:offsets[node + 1]]

    def arcs_between(self, tail: int, head: int) -> np.ndarray:
        ids = self.out_arcs(tail)
        return ids[self._heads[ids] == head]

    def arcs(self) -> Iterator[Tuple[int, int, np.ndarray]]:
        for arc in range(self.num_arcs):
            yield int(self._tails[arc]), int(self._heads[arc]), self._costs[arc]

    @property
    def max_arc_cost(self) -> float:
        return float(self._costs.max()) if self._costs.size else 0.0

    def default_scale(self) -> float:
        """M = (|N| - 1) · max arc cost, an upper bound on any simple path cost"""
        scale = (self._num_nodes - 1) * self.max_arc_cost
        return scale if scale > 0.0 else 1.0

    def reachable_from(self, node: int) -> Set[int]:
        seen = {node}
        queue = deque([node])
        while queue:
            current = queue.popleft()
            for nxt in self._heads[self.out_arcs(current)].tolist():
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        return seen

    def goal_reachable(self) -> bool:
        reachable = self.reachable_from(self._start)
        return any(g in reachable for g in self._goals)

    def validate_reachability(self) -> None:
        if not self.goal_reachable():
            raise GraphError(f"no goal in {list(self._goals)} is reachable from start {self._start}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, StateSpaceGraph):
            return NotImplemented
        return (
            self._num_nodes == other._num_nodes
            and self._m == other._m
            and self._start == other._start
            and self._goals == other._goals
            and np.array_equal(self._tails, other._tails)
            and np.array_equal(self._heads, other._heads)
            and np.array_equal(self._costs, other._costs)
        )

    def __repr__(self) -> str:
        return (f"StateSpaceGraph(nodes={self._num_nodes}, arcs={self.num_arcs}, m={self._m}, "
                f"start={self._start}, goals={list(self._goals)})")


@dataclass(frozen=True)
class Path:
    """Node sequence ⟨s, ..., n⟩, optionally with the arc ids taken"""

    nodes: Tuple[int, ...]
    arcs: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if not self.nodes:
            raise GraphError("path must contain at least one node")
        object.__setattr__(self, 'nodes', tuple(int(n) for n in self.nodes))
        if self.arcs is not None:
            object.__setattr__(self, 'arcs', tuple(int(a) for a in self.arcs))
            if len(self.arcs) != len(self.nodes) - 1:
                raise GraphError(f"path with {len(self.nodes)} nodes needs {len(self.nodes) - 1} arcs")

    def __len__(self) -> int:
        return len(self.nodes)

    def is_simple(self) -> bool:
        return len(set(self.nodes)) == len(self.nodes)


def path_arcs(graph: StateSpaceGraph, path: Path) -> List[int]:
    """Arc ids along the path; node-only paths must not cross parallel arcs"""
    arcs: List[int] = []
    for index, (tail, head) in enumerate(zip(path.nodes, path.nodes[1:])):
        if path.arcs is not None:
            arc = path.arcs[index]
            if not 0 <= arc < graph.num_arcs or graph.tails[arc] != tail or graph.heads[arc] != head:
                raise GraphError(f"arc {arc} does not connect {tail} -> {head}")
            arcs.append(arc)
            continue
        candidates = graph.arcs_between(tail, head)
        if candidates.size == 0:
            raise GraphError(f"nodes {tail} and {head} are not adjacent")
        if candidates.size > 1:
            raise GraphError(f"{candidates.size} parallel arcs {tail} -> {head}; the path must name its arcs")
        arcs.append(int(candidates[0]))
    return arcs


def path_cost(graph: StateSpaceGraph, path: Path) -> np.ndarray:
    """c(P, i) = Σ_{a∈P} c(a, i) for every scenario i"""
    for node in path.nodes:
        if not 0 <= node < graph.num_nodes:
            raise GraphError(f"node {node} is not in the graph")
    arcs = path_arcs(graph, path)
    if not arcs:
        return np.zeros(graph.m)
    return graph.costs[arcs].sum(axis=0)


def pareto_dominates(x: np.ndarray, y: np.ndarray, strict: bool = False) -> bool:
    """Weak dominance x ≤ y componentwise; strict adds x ≠ y"""
    x, y = np.asarray(x), np.asarray(y)
    if x.shape != y.shape:
        raise DimensionError(f"cannot compare vectors of shapes {x.shape} and {y.shape}")
    weak = bool(np.all(x <= y))
    if not strict:
        return weak
    return weak and bool(np.any(x < y))


def strictly_dominates(x: np.ndarray, y: np.ndarray) -> bool:
    return bool(np.all(x <= y) and np.any(x < y))


class Label:
    """
    A detected subpath: terminal node, accumulated cost vector g, evaluation
    vector f = g + h(node), scalarized cost gbar = c_p(g) and a parent link
    from which the node sequence is rebuilt.
    """

    __slots__ = ('node', 'g', 'f', 'gbar', 'parent', 'arc', 'depth', 'seq', 'alive', 'expanded')

    def __init__(
        self,
        node: int,
        g: np.ndarray,
        f: np.ndarray,
        gbar: float,
        parent: Optional['Label'] = None,
        arc: Optional[int] = None,
        seq: int = 0,
    ):
        self.node = node
        self.g = g
        self.f = f
        self.gbar = gbar
        self.parent = parent
        self.arc = arc
        self.depth = 0 if parent is None else parent.depth + 1
        self.seq = seq
        self.alive = True
        self.expanded = False

    @property
    def path(self) -> Tuple[int, ...]:
        nodes = []
        label = self
        while label is not None:
            nodes.append(label.node)
            label = label.parent
        return tuple(reversed(nodes))

    @property
    def arcs(self) -> Tuple[int, ...]:
        arcs = []
        label = self
        while label.parent is not None:
            arcs.append(label.arc)
            label = label.parent
        return tuple(reversed(arcs))

    def to_path(self) -> Path:
        return Path(self.path, self.arcs)

    def __repr__(self) -> str:
        return f"Label(node={self.node}, g={self.g.tolist()}, gbar={self.gbar:.6g}, path={list(self.path)})"


def nd_filter(labels: Sequence[Label]) -> List[Label]:
    """
    Non-dominated labels, in input order

    A label survives when no other label's g strictly Pareto-dominates its g;
    among labels with identical g only the earliest is kept.
    """
    if not labels:
        return []
    vectors = np.array([label.g for label in labels])
    weak = np.all(vectors[:, None, :] <= vectors[None, :, :], axis=2)
    equal = np.all(vectors[:, None, :] == vectors[None, :, :], axis=2)
    strict = weak & ~equal
    dominated = strict.any(axis=0)
    earlier_equal = np.tril(equal, k=-1).any(axis=1)
    return [label for index, label in enumerate(labels) if not dominated[index] and not earlier_equal[index]]
