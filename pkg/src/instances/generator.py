"""
Seeded random instances in the style of the path-planning experiments

One PCG64 stream per concern is spawned from numpy's SeedSequence(seed):
stream 0 draws arcs, stream 1 draws arc costs, stream 2 draws the capacity
and stream 3 draws the heuristic factor gamma. The same seed therefore gives
the same instance whatever the other options consume.
"""

import logging
from typing import List

import numpy as np

from src.config import GAMMA_DRAW_RANGE, GENERATOR_RETRIES, MAX_SCENARIOS
from src.core.capacity import MobiusCapacity, ProbabilityVector
from src.core.choquet import DisutilityFn
from src.core.graph import StateSpaceGraph
from src.errors import ConfigurationError, GraphError
from src.instances.instance import CapacitySpec, Instance

logger = logging.getLogger(__name__)

ARC_STREAM, COST_STREAM, CAPACITY_STREAM, GAMMA_STREAM = range(4)
MAX_ARC_COST = 100
GENERATOR_KINDS = ('v1', 'v2')


def _streams(seed: int) -> List[np.random.Generator]:
    return [np.random.Generator(np.random.PCG64(child)) for child in np.random.SeedSequence(seed).spawn(4)]


def draw_gamma(seed: int) -> float:
    """Heuristic factor drawn uniformly in [0.7, 1)"""
    low, high = GAMMA_DRAW_RANGE
    return float(_streams(seed)[GAMMA_STREAM].uniform(low, high))


def sample_simplex(rng: np.random.Generator, m: int) -> ProbabilityVector:
    """Uniform draw on the probability simplex by sorted-uniform spacings"""
    cuts = np.sort(rng.random(m - 1))
    return ProbabilityVector(np.diff(np.concatenate(([0.0], cuts, [1.0]))))


def sample_mobius(rng: np.random.Generator, m: int) -> MobiusCapacity:
    """Positive masses on every non-empty subset, normalized to one"""
    masses = np.zeros(1 << m)
    masses[1:] = 1.0 - rng.random((1 << m) - 1)
    return MobiusCapacity(m, masses / masses.sum())


def generate(
    num_nodes: int,
    density: float = 0.45,
    m: int = 3,
    capacity_kind: str = 'v1',
    seed: int = 0,
    exponent: float = 2.0,
    max_retries: int = GENERATOR_RETRIES,
) -> Instance:
    """
    Generate a random instance

    Args:
        num_nodes: node count, node 0 is the start and the last node the single goal
        density: probability that an ordered pair (u, w), u != w, carries an arc
        m: scenario count
        capacity_kind: 'v1' (concave distortion of a random p) or 'v2' (random plausibility)
        seed: seed of all random streams
        exponent: exponent of the power disutility, its scale is left to the instance
        max_retries: arc draws attempted before giving up on reaching the goal

    Returns:
        The generated Instance
    """
    if num_nodes < 2:
        raise ConfigurationError(f"num_nodes must be at least 2, got {num_nodes}")
    if not 0.0 < density <= 1.0:
        raise ConfigurationError(f"density must lie in (0, 1], got {density}")
    if not 1 <= m <= MAX_SCENARIOS:
        raise ConfigurationError(f"m must lie in 1..{MAX_SCENARIOS}, got {m}")
    kind = 'v2' if capacity_kind == 'mobius' else capacity_kind
    if kind not in GENERATOR_KINDS:
        raise ConfigurationError(f"capacity_kind must be one of {GENERATOR_KINDS}, got '{capacity_kind}'")

    arc_rng, cost_rng, capacity_rng, _ = _streams(seed)
    goal = num_nodes - 1

    for attempt in range(1, max_retries + 1):
        mask = arc_rng.random((num_nodes, num_nodes)) < density
        np.fill_diagonal(mask, False)
        tails, heads = np.nonzero(mask)
        skeleton = StateSpaceGraph.from_arrays(num_nodes, tails, heads, np.zeros((tails.size, m)), 0, [goal])
        if skeleton.goal_reachable():
            break
        logger.warning(f"Seed {seed}: goal {goal} unreachable on attempt {attempt}/{max_retries}, redrawing arcs")
    else:
        raise GraphError(f"goal unreachable from start after {max_retries} arc draws (seed {seed})")

    costs = cost_rng.integers(0, MAX_ARC_COST + 1, size=(tails.size, m)).astype(float)
    graph = StateSpaceGraph.from_arrays(num_nodes, tails, heads, costs, 0, [goal])

    if kind == 'v1':
        capacity_spec = CapacitySpec.v1(sample_simplex(capacity_rng, m))
    else:
        capacity_spec = CapacitySpec.mobius(sample_mobius(capacity_rng, m))

    metadata = {
        'generator': 'random',
        'seed': seed,
        'density': density,
        'capacity_kind': kind,
        'attempts': attempt,
    }
    logger.debug(f"Generated {graph!r} with {kind} capacity from seed {seed}")
    return Instance(graph, capacity_spec, DisutilityFn.power(exponent), metadata)
