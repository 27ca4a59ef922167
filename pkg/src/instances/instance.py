"""Problem instances and their JSON document format"""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path as FilePath
from typing import Any, Dict, List, Optional, Union

import numpy as np

from src.core.capacity import (
    Capacity,
    MobiusCapacity,
    ProbabilityVector,
    capacity_from_mobius,
    capacity_v1,
    is_concave,
)
from src.core.choquet import DisutilityFn
from src.core.graph import StateSpaceGraph
from src.errors import ChoquetPathError, GraphError, InstanceFormatError

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1
CAPACITY_KINDS = ('table', 'v1', 'mobius')

PathLike = Union[str, FilePath]


@dataclass(frozen=True)
class CapacitySpec:
    """
    How an instance describes its capacity

    kind 'table': explicit values for every mask
    kind 'v1': v1(A) = 1 - (Σ_{i∉A} p_i)^2 from a probability vector
    kind 'mobius': plausibility from non-negative Möbius masses
    """

    kind: str
    table: Optional[Dict[int, float]] = None
    p: Optional[tuple] = None
    m: int = 0

    @classmethod
    def from_capacity(cls, capacity: Capacity) -> 'CapacitySpec':
        return cls('table', table=capacity.to_table(), m=capacity.m)

    @classmethod
    def v1(cls, p: ProbabilityVector) -> 'CapacitySpec':
        return cls('v1', p=tuple(float(x) for x in p.p), m=p.m)

    @classmethod
    def mobius(cls, masses: MobiusCapacity) -> 'CapacitySpec':
        return cls('mobius', table=masses.to_table(), m=masses.m)

    def resolve(self) -> Capacity:
        if self.kind == 'table':
            return Capacity.from_table(self.m, self.table)
        elif self.kind == 'v1':
            return capacity_v1(ProbabilityVector(self.p))
        elif self.kind == 'mobius':
            return capacity_from_mobius(MobiusCapacity.from_table(self.m, self.table))
        raise InstanceFormatError('capacity.kind', f"unknown kind '{self.kind}', expected one of {CAPACITY_KINDS}")

    def to_dict(self) -> Dict[str, Any]:
        if self.kind == 'v1':
            return {'kind': 'v1', 'p': list(self.p)}
        key = 'values' if self.kind == 'table' else 'masses'
        return {'kind': self.kind, key: {str(mask): value for mask, value in sorted(self.table.items())}}


@dataclass
class Instance:
    """A ψ-OPT instance: graph, capacity description, disutility and metadata"""

    graph: StateSpaceGraph
    capacity_spec: CapacitySpec
    disutility: DisutilityFn
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        capacity = self.capacity_spec.resolve()
        if capacity.m != self.graph.m:
            raise InstanceFormatError('capacity', f"capacity covers m={capacity.m}, arcs carry m={self.graph.m}")
        if not is_concave(capacity):
            raise InstanceFormatError('capacity', "capacity must be concave")
        self._capacity = capacity

    @property
    def m(self) -> int:
        return self.graph.m

    @property
    def capacity(self) -> Capacity:
        return self._capacity

    @property
    def resolved_disutility(self) -> DisutilityFn:
        """The disutility with M = (|N| - 1) · max arc cost when the file leaves it out"""
        return self.disutility.with_scale(self.graph.default_scale())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Instance):
            return NotImplemented
        return (
            self.graph == other.graph
            and self.capacity_spec == other.capacity_spec
            and self.disutility == other.disutility
            and self.metadata == other.metadata
        )

    def __repr__(self) -> str:
        return (f"Instance(nodes={self.graph.num_nodes}, arcs={self.graph.num_arcs}, m={self.m}, "
                f"capacity={self.capacity_spec.kind}, disutility={self.disutility})")


def _number(value: float) -> Union[int, float]:
    return int(value) if float(value).is_integer() else float(value)


def to_document(instance: Instance) -> Dict[str, Any]:
    graph = instance.graph
    return {
        'version': FORMAT_VERSION,
        'm': graph.m,
        'num_nodes': graph.num_nodes,
        'start': graph.start,
        'goals': list(graph.goals),
        'arcs': [
            {'from': tail, 'to': head, 'costs': [_number(c) for c in costs.tolist()]}
            for tail, head, costs in graph.arcs()
        ],
        'capacity': instance.capacity_spec.to_dict(),
        'disutility': instance.disutility.to_dict(),
        'metadata': instance.metadata,
    }


def _require(doc: Dict[str, Any], key: str, kind, where: str = '') -> Any:
    name = f"{where}{key}"
    if key not in doc:
        raise InstanceFormatError(name, "missing field")
    value = doc[key]
    if kind is int and (isinstance(value, bool) or not isinstance(value, int)):
        raise InstanceFormatError(name, f"expected an integer, got {value!r}")
    if kind is not int and not isinstance(value, kind):
        raise InstanceFormatError(name, f"expected {kind.__name__}, got {type(value).__name__}")
    return value


def _parse_arcs(raw: List[Any], m: int, num_nodes: int) -> tuple:
    tails = np.empty(len(raw), dtype=np.int64)
    heads = np.empty(len(raw), dtype=np.int64)
    costs = np.empty((len(raw), m))
    for i, arc in enumerate(raw):
        where = f"arcs[{i}]"
        if not isinstance(arc, dict):
            raise InstanceFormatError(where, "expected an object with from, to and costs")
        tail = _require(arc, 'from', int, f"{where}.")
        head = _require(arc, 'to', int, f"{where}.")
        for name, node in (('from', tail), ('to', head)):
            if not 0 <= node < num_nodes:
                raise InstanceFormatError(f"{where}.{name}", f"node {node} outside 0..{num_nodes - 1}")
        row = _require(arc, 'costs', list, f"{where}.")
        if len(row) != m:
            raise InstanceFormatError(f"{where}.costs", f"expected {m} costs, got {len(row)}")
        if not all(_is_number(c) for c in row):
            raise InstanceFormatError(f"{where}.costs", f"non-numeric cost in {row!r}")
        values = np.array(row, dtype=float)
        if not np.all(np.isfinite(values)) or np.any(values < 0.0):
            raise InstanceFormatError(f"{where}.costs", f"costs must be finite and non-negative, got {row!r}")
        tails[i], heads[i], costs[i] = tail, head, values
    return tails, heads, costs


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _parse_mask_table(raw: Dict[str, Any], where: str, m: int) -> Dict[int, float]:
    table = {}
    for key, value in raw.items():
        try:
            mask = int(key)
        except ValueError:
            raise InstanceFormatError(where, f"table key {key!r} is not a decimal bitmask")
        if not 0 <= mask < 1 << m:
            raise InstanceFormatError(f"{where}.{key}", f"mask {mask} out of range for m={m}")
        if not _is_number(value):
            raise InstanceFormatError(f"{where}.{key}", f"expected a number, got {value!r}")
        table[mask] = float(value)
    return table


def _parse_capacity(raw: Dict[str, Any], m: int) -> CapacitySpec:
    kind = _require(raw, 'kind', str, 'capacity.')
    if kind == 'table':
        spec = CapacitySpec('table', table=_parse_mask_table(_require(raw, 'values', dict, 'capacity.'),
                                                             'capacity.values', m), m=m)
    elif kind == 'mobius':
        spec = CapacitySpec('mobius', table=_parse_mask_table(_require(raw, 'masses', dict, 'capacity.'),
                                                              'capacity.masses', m), m=m)
    elif kind == 'v1':
        p = _require(raw, 'p', list, 'capacity.')
        if len(p) != m:
            raise InstanceFormatError('capacity.p', f"expected {m} probabilities, got {len(p)}")
        for i, x in enumerate(p):
            if not _is_number(x):
                raise InstanceFormatError(f"capacity.p[{i}]", f"expected a number, got {x!r}")
        spec = CapacitySpec('v1', p=tuple(float(x) for x in p), m=m)
    else:
        raise InstanceFormatError('capacity.kind', f"unknown kind '{kind}', expected one of {CAPACITY_KINDS}")

    try:
        spec.resolve()
    except ChoquetPathError as e:
        raise InstanceFormatError('capacity', str(e))
    return spec


def from_document(doc: Dict[str, Any]) -> Instance:
    """Build an instance from a parsed document, naming the offending field on any error"""
    if not isinstance(doc, dict):
        raise InstanceFormatError('document', "expected a JSON object")
    version = _require(doc, 'version', int)
    if version != FORMAT_VERSION:
        raise InstanceFormatError('version', f"unsupported version {version}, expected {FORMAT_VERSION}")

    m = _require(doc, 'm', int)
    if m < 1:
        raise InstanceFormatError('m', f"scenario count must be positive, got {m}")
    num_nodes = _require(doc, 'num_nodes', int)
    if num_nodes < 1:
        raise InstanceFormatError('num_nodes', f"expected at least one node, got {num_nodes}")
    start = _require(doc, 'start', int)
    if not 0 <= start < num_nodes:
        raise InstanceFormatError('start', f"node {start} outside 0..{num_nodes - 1}")

    goals = _require(doc, 'goals', list)
    if not goals:
        raise InstanceFormatError('goals', "goals must be non-empty")
    for i, goal in enumerate(goals):
        if isinstance(goal, bool) or not isinstance(goal, int) or not 0 <= goal < num_nodes:
            raise InstanceFormatError(f"goals[{i}]", f"expected a node in 0..{num_nodes - 1}, got {goal!r}")

    tails, heads, costs = _parse_arcs(_require(doc, 'arcs', list), m, num_nodes)
    capacity_spec = _parse_capacity(_require(doc, 'capacity', dict), m)

    raw_w = _require(doc, 'disutility', dict)
    for key in ('exponent', 'scale'):
        value = raw_w.get(key)
        if value is not None and not _is_number(value):
            raise InstanceFormatError(f"disutility.{key}", f"expected a number, got {value!r}")
    try:
        disutility = DisutilityFn.from_dict(raw_w)
    except ChoquetPathError as e:
        raise InstanceFormatError('disutility', str(e))

    metadata = doc.get('metadata', {})
    if not isinstance(metadata, dict):
        raise InstanceFormatError('metadata', "expected a JSON object")

    try:
        graph = StateSpaceGraph.from_arrays(num_nodes, tails, heads, costs, start, goals)
    except ChoquetPathError as e:
        raise InstanceFormatError('arcs', str(e))
    try:
        graph.validate_reachability()
    except GraphError as e:
        raise InstanceFormatError('goals', str(e))
    return Instance(graph, capacity_spec, disutility, metadata)


def dumps(instance: Instance) -> str:
    return json.dumps(to_document(instance), indent=2) + '\n'


def loads(text: str) -> Instance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InstanceFormatError('document', f"invalid JSON: {e}")
    return from_document(doc)


def save(instance: Instance, destination: PathLike) -> FilePath:
    destination = FilePath(destination)
    destination.parent.mkdir(parents=True, exist_ok=True)
    destination.write_text(dumps(instance), encoding='utf-8')
    logger.debug(f"Saved {instance!r} to {destination}")
    return destination


def load(source: PathLike) -> Instance:
    source = FilePath(source)
    try:
        text = source.read_text(encoding='utf-8')
    except UnicodeDecodeError as e:
        raise InstanceFormatError('document', f"not UTF-8 text: {e}")
    instance = loads(text)
    logger.debug(f"Loaded {instance!r} from {source}")
    return instance


EXAMPLE1_CAPACITY = {0: 0.0, 1: 1 / 3, 2: 2 / 3, 3: 1.0, 4: 2 / 3, 5: 1.0, 6: 2 / 3, 7: 1.0}
EXAMPLE1_PATH_COSTS = ((0, 100, 100), (100, 0, 100), (0, 100, 0), (100, 0, 0))

EXAMPLE3_CAPACITY = {0: 0.0, 1: 0.4, 2: 0.5, 3: 0.8, 4: 0.5, 5: 0.8, 6: 0.7, 7: 1.0}


def example1_instance() -> Instance:
    """
    Four solution paths s -> k -> goal, one per row of the cost table

    The capacity is the upper envelope of the distributions with P({1}) = 1/3;
    w(0) = 0 and w(100) = 1.
    """
    arcs = [(0, k + 1, costs) for k, costs in enumerate(EXAMPLE1_PATH_COSTS)]
    arcs += [(k + 1, 5, (0, 0, 0)) for k in range(len(EXAMPLE1_PATH_COSTS))]
    graph = StateSpaceGraph(6, 3, arcs, start=0, goals=[5])
    return Instance(
        graph,
        CapacitySpec('table', table=dict(EXAMPLE1_CAPACITY), m=3),
        DisutilityFn.power(1.0, scale=100.0),
        {'name': 'example1'},
    )


def example3_instance() -> Instance:
    """
    Two parallel arcs s -> n with costs (0,100,0) and (100,0,0), then n -> goal
    with (0,0,100). The locally worse prefix is the optimal one.
    """
    arcs = [(0, 1, (0, 100, 0)), (0, 1, (100, 0, 0)), (1, 2, (0, 0, 100))]
    graph = StateSpaceGraph(3, 3, arcs, start=0, goals=[2])
    return Instance(
        graph,
        CapacitySpec('table', table=dict(EXAMPLE3_CAPACITY), m=3),
        DisutilityFn.power(1.0, scale=100.0),
        {'name': 'example3'},
    )
