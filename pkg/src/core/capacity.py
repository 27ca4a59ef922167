"""Capacities over a finite scenario set

Subsets of the scenario set S = {0, ..., m-1} are bitmasks: bit i is set when
scenario i belongs to the event. A capacity is stored as a dense table of 2^m
values indexed by mask.
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Union

import numpy as np

from src.config import MAX_SCENARIOS, TOLERANCE
from src.errors import CapacityError, DimensionError

logger = logging.getLogger(__name__)


def _check_scenario_count(m: int) -> int:
    m = int(m)
    if not 1 <= m <= MAX_SCENARIOS:
        raise DimensionError(f"scenario count must lie in [1, {MAX_SCENARIOS}], got {m}")
    return m


@lru_cache(maxsize=None)
def popcounts(m: int) -> np.ndarray:
    """Cardinality of every subset mask of an m-scenario set"""
    counts = np.zeros(1 << m, dtype=np.int64)
    for i in range(m):
        counts[(np.arange(1 << m) >> i) & 1 == 1] += 1
    counts.flags.writeable = False
    return counts


@lru_cache(maxsize=None)
def membership(m: int) -> np.ndarray:
    """Boolean matrix (m, 2^m): entry [i, A] is True when scenario i is in A"""
    masks = np.arange(1 << m)
    table = np.array([(masks >> i) & 1 == 1 for i in range(m)])
    table.flags.writeable = False
    return table


@dataclass(frozen=True)
class ScenarioSet:
    """An event A ⊆ S encoded as a bitmask"""

    bitmask: int
    m: int

    def __post_init__(self):
        _check_scenario_count(self.m)
        if not 0 <= self.bitmask < (1 << self.m):
            raise DimensionError(f"mask {self.bitmask} out of range for m={self.m}")

    @classmethod
    def of(cls, indices: Iterable[int], m: int) -> 'ScenarioSet':
        mask = 0
        for i in indices:
            if not 0 <= i < m:
                raise DimensionError(f"scenario {i} out of range for m={m}")
            mask |= 1 << i
        return cls(mask, m)

    @classmethod
    def full(cls, m: int) -> 'ScenarioSet':
        return cls((1 << m) - 1, m)

    def _other(self, other: 'ScenarioSet') -> int:
        if other.m != self.m:
            raise DimensionError(f"scenario sets over m={self.m} and m={other.m}")
        return other.bitmask

    def union(self, other: 'ScenarioSet') -> 'ScenarioSet':
        return ScenarioSet(self.bitmask | self._other(other), self.m)

    def intersection(self, other: 'ScenarioSet') -> 'ScenarioSet':
        return ScenarioSet(self.bitmask & self._other(other), self.m)

    def complement(self) -> 'ScenarioSet':
        return ScenarioSet(((1 << self.m) - 1) ^ self.bitmask, self.m)

    def issubset(self, other: 'ScenarioSet') -> bool:
        return self.bitmask & ~self._other(other) == 0

    def __contains__(self, i: int) -> bool:
        return bool(self.bitmask >> i & 1)

    def __iter__(self) -> Iterator[int]:
        return (i for i in range(self.m) if self.bitmask >> i & 1)

    def __len__(self) -> int:
        return bin(self.bitmask).count('1')


class ProbabilityVector:
    """A point of the probability simplex over the scenarios"""

    __slots__ = ('_p',)

    def __init__(self, p: Sequence[float], tol: float = TOLERANCE):
        arr = np.array(p, dtype=float).reshape(-1)
        _check_scenario_count(arr.size)
        if not np.all(np.isfinite(arr)):
            raise CapacityError("probability vector has non-finite components")
        if np.any(arr < -tol):
            raise CapacityError(f"probability vector has negative components: {arr.tolist()}")
        if abs(arr.sum() - 1.0) > tol:
            raise CapacityError(f"probabilities sum to {arr.sum()!r}, expected 1")
        arr = np.clip(arr, 0.0, None)
        arr.flags.writeable = False
        self._p = arr

    @property
    def p(self) -> np.ndarray:
        return self._p

    @property
    def m(self) -> int:
        return self._p.size

    def event_probabilities(self) -> np.ndarray:
        """P(A) for every mask A"""
        return self._p @ membership(self.m)

    def __len__(self) -> int:
        return self.m

    def __iter__(self):
        return iter(self._p.tolist())

    def __getitem__(self, i):
        return self._p[i]

    def __array__(self, dtype=None, copy=None):
        return self._p if dtype is None else self._p.astype(dtype)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProbabilityVector):
            return NotImplemented
        return np.array_equal(self._p, other._p)

    def __repr__(self) -> str:
        return f"ProbabilityVector({self._p.tolist()})"


class Capacity:
    """
    Normalized monotone set function v : 2^S -> [0, 1]

    Values are validated at construction: v(∅) = 0, v(S) = 1 and
    A ⊆ B ⇒ v(A) ≤ v(B), all up to the configured tolerance. Values within
    tolerance of the boundary conditions are snapped to exactly 0 and 1.
    """

    __slots__ = ('_values', '_m')

    def __init__(self, values: Sequence[float], tol: float = TOLERANCE):
        arr = np.array(values, dtype=float).reshape(-1)
        m = arr.size.bit_length() - 1
        if arr.size < 2 or arr.size != 1 << m:
            raise CapacityError(f"capacity table must have 2^m entries, got {arr.size}")
        _check_scenario_count(m)

        if not np.all(np.isfinite(arr)):
            raise CapacityError("capacity table has non-finite values")
        if abs(arr[0]) > tol:
            raise CapacityError(f"v(∅) must be 0, got {arr[0]!r}")
        if abs(arr[-1] - 1.0) > tol:
            raise CapacityError(f"v(S) must be 1, got {arr[-1]!r}")
        arr[0], arr[-1] = 0.0, 1.0

        masks = np.arange(arr.size)
        for i in range(m):
            bit = 1 << i
            lower = masks[masks & bit == 0]
            drops = arr[lower] - arr[lower | bit]
            if np.any(drops > tol):
                worst = int(lower[np.argmax(drops)])
                raise CapacityError(
                    f"capacity is not monotone: v({worst}) > v({worst | bit})"
                )

        arr.flags.writeable = False
        self._values = arr
        self._m = m

    @classmethod
    def from_table(cls, m: int, table: Mapping[int, float]) -> 'Capacity':
        """Build from a mask -> value mapping; missing masks are an error"""
        m = _check_scenario_count(m)
        values = np.full(1 << m, np.nan)
        for mask, value in table.items():
            mask = int(mask)
            if not 0 <= mask < 1 << m:
                raise CapacityError(f"mask {mask} out of range for m={m}")
            values[mask] = float(value)
        missing = np.flatnonzero(np.isnan(values))
        if missing.size:
            raise CapacityError(f"capacity table is missing masks {missing.tolist()[:8]}")
        return cls(values)

    def to_table(self) -> Dict[int, float]:
        return {mask: float(value) for mask, value in enumerate(self._values)}

    @property
    def m(self) -> int:
        return self._m

    @property
    def values(self) -> np.ndarray:
        return self._values

    @property
    def full_mask(self) -> int:
        return (1 << self._m) - 1

    def __getitem__(self, event: Union[int, ScenarioSet]) -> float:
        if isinstance(event, ScenarioSet):
            if event.m != self._m:
                raise DimensionError(f"event over m={event.m} for capacity over m={self._m}")
            event = event.bitmask
        return float(self._values[event])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Capacity):
            return NotImplemented
        return np.array_equal(self._values, other._values)

    def __repr__(self) -> str:
        return f"Capacity(m={self._m}, values={self._values.tolist()})"


@dataclass(frozen=True)
class MobiusCapacity:
    """Non-negative Möbius masses (a mass function) adding up to one"""

    m: int
    masses: np.ndarray

    def __post_init__(self):
        m = _check_scenario_count(self.m)
        masses = np.array(self.masses, dtype=float).reshape(-1)
        if masses.size != 1 << m:
            raise CapacityError(f"expected {1 << m} masses, got {masses.size}")
        if masses[0] != 0.0:
            raise CapacityError("mass of the empty set must be 0")
        if np.any(masses < 0.0) or not np.all(np.isfinite(masses)):
            raise CapacityError("Möbius masses must be finite and non-negative")
        if abs(masses.sum() - 1.0) > TOLERANCE:
            raise CapacityError(f"Möbius masses sum to {masses.sum()!r}, expected 1")
        masses.flags.writeable = False
        object.__setattr__(self, 'masses', masses)

    @classmethod
    def from_table(cls, m: int, table: Mapping[int, float]) -> 'MobiusCapacity':
        m = _check_scenario_count(m)
        masses = np.zeros(1 << m)
        for mask, value in table.items():
            mask = int(mask)
            if not 0 <= mask < 1 << m:
                raise CapacityError(f"mask {mask} out of range for m={m}")
            masses[mask] = float(value)
        return cls(m, masses)

    def to_table(self) -> Dict[int, float]:
        return {mask: float(value) for mask, value in enumerate(self.masses) if value != 0.0}


def dual(v: Capacity) -> Capacity:
    """v̄(A) = 1 - v(S \\ A)"""
    masks = np.arange(1 << v.m)
    return Capacity(1.0 - v.values[v.full_mask ^ masks])


def _second_differences(v: Capacity) -> np.ndarray:
    """v(A∪{i}) + v(A∪{j}) - v(A∪{i,j}) - v(A) for all A and i < j outside A"""
    values = v.values
    masks = np.arange(1 << v.m)
    chunks: List[np.ndarray] = []
    for i in range(v.m):
        for j in range(i + 1, v.m):
            bi, bj = 1 << i, 1 << j
            base = masks[masks & (bi | bj) == 0]
            chunks.append(values[base | bi] + values[base | bj] - values[base | bi | bj] - values[base])
    return np.concatenate(chunks) if chunks else np.zeros(0)


def is_concave(v: Capacity, tol: float = TOLERANCE) -> bool:
    """Submodularity: v(A∪B) + v(A∩B) ≤ v(A) + v(B) for all A, B"""
    # the pairwise inequality holds iff it holds for adjacent pairs A∪{i}, A∪{j}
    return bool(np.all(_second_differences(v) >= -tol))


def is_convex(v: Capacity, tol: float = TOLERANCE) -> bool:
    """Supermodularity: v(A∪B) + v(A∩B) ≥ v(A) + v(B) for all A, B"""
    return bool(np.all(_second_differences(v) <= tol))


def require_concave(v: Capacity) -> None:
    if not is_concave(v):
        raise CapacityError("capacity must be concave (submodular)")


def capacity_additive(p: ProbabilityVector) -> Capacity:
    """Probability measure seen as a capacity: v(A) = Σ_{i∈A} p_i"""
    return Capacity(p.event_probabilities())


def capacity_vacuous(m: int) -> Capacity:
    """v(A) = 1 for every non-empty A; the Choquet integral becomes the maximum"""
    values = np.ones(1 << _check_scenario_count(m))
    values[0] = 0.0
    return Capacity(values)


def capacity_v1(p: ProbabilityVector) -> Capacity:
    """v1(A) = 1 - (Σ_{i∉A} p_i)^2, a concave distortion of p"""
    sums = p.event_probabilities()
    masks = np.arange(1 << p.m)
    complement_mass = sums[((1 << p.m) - 1) ^ masks]
    return Capacity(1.0 - complement_mass ** 2)


def capacity_from_mobius(mu: MobiusCapacity) -> Capacity:
    """Plausibility v2(A) = Σ_{E∩A≠∅} φ(E)"""
    # belief of every mask by a subset-sum (zeta) transform
    belief = np.array(mu.masses, dtype=float)
    masks = np.arange(1 << mu.m)
    for i in range(mu.m):
        upper = masks[masks >> i & 1 == 1]
        belief[upper] += belief[upper ^ (1 << i)]
    full = (1 << mu.m) - 1
    values = 1.0 - belief[full ^ masks]
    values[0] = 0.0
    return Capacity(values)


def _check_dimensions(v: Capacity, p: ProbabilityVector) -> None:
    if v.m != p.m:
        raise DimensionError(f"capacity has m={v.m} but probability vector has m={p.m}")


def core_contains(v: Capacity, p: ProbabilityVector, tol: float = TOLERANCE) -> bool:
    """True iff v̄(A) - tol ≤ P(A) ≤ v(A) + tol for every event A"""
    _check_dimensions(v, p)
    require_concave(v)
    probs = p.event_probabilities()
    lower = dual(v).values
    return bool(np.all(probs >= lower - tol) and np.all(probs <= v.values + tol))


def shapley(v: Capacity) -> ProbabilityVector:
    """
    Shapley values of the dual capacity

    φ_i = Σ_{K⊆S∖{i}} (m-|K|-1)!|K|!/m! · (v̄(K∪{i}) - v̄(K)). For concave v the
    dual is convex and φ lies in core(v̄).
    """
    require_concave(v)
    m = v.m
    vbar = dual(v).values
    sizes = popcounts(m)
    weights = np.array([
        math.factorial(m - k - 1) * math.factorial(k) / math.factorial(m) for k in range(m)
    ])
    masks = np.arange(1 << m)
    phi = np.empty(m)
    for i in range(m):
        bit = 1 << i
        coalitions = masks[masks & bit == 0]
        phi[i] = np.sum(weights[sizes[coalitions]] * (vbar[coalitions | bit] - vbar[coalitions]))
    return ProbabilityVector(phi)


def max_entropy(v: Capacity, tol: float = TOLERANCE) -> ProbabilityVector:
    """
    Maximum-entropy probability of core(v̄) by the greedy procedure

    Each step picks the non-empty E ⊆ S∖B minimizing (v(B∪E) - v(B)) / |E|
    and spreads that increment uniformly over E. When several sets reach the
    minimum their union is taken.
    """
    require_concave(v)
    m = v.m
    values = v.values
    sizes = popcounts(m)
    masks = np.arange(1 << m)
    full = v.full_mask

    p = np.zeros(m)
    taken = 0
    while taken != full:
        candidates = masks[(masks & taken == 0) & (masks != 0)]
        ratios = (values[taken | candidates] - values[taken]) / sizes[candidates]
        best = ratios.min()
        chosen = int(np.bitwise_or.reduce(candidates[ratios <= best + tol]))
        share = (values[taken | chosen] - values[taken]) / sizes[chosen]
        for i in range(m):
            if chosen >> i & 1:
                p[i] = share
        logger.debug(f"max_entropy step: B={taken} A={chosen} share={share:.6g}")
        taken |= chosen
    return ProbabilityVector(p)


def entropy(p: ProbabilityVector) -> float:
    """Shannon entropy -Σ p_i log p_i (natural log, 0·log 0 = 0)"""
    arr = np.asarray(p, dtype=float)
    positive = arr[arr > 0.0]
    return float(-np.sum(positive * np.log(positive)))
