"""Random capacities and instances for property tests"""

import numpy as np

from src.core.capacity import Capacity, MobiusCapacity, ProbabilityVector, capacity_from_mobius, capacity_v1
from src.instances.generator import generate


def random_simplex(rng: np.random.Generator, m: int) -> ProbabilityVector:
    return ProbabilityVector(rng.dirichlet(np.ones(m)))


def random_concave_capacity(rng: np.random.Generator, m: int) -> Capacity:
    """Either a v1 distortion or a random plausibility, both concave"""
    if rng.random() < 0.5:
        return capacity_v1(random_simplex(rng, m))
    masses = np.zeros(1 << m)
    masses[1:] = rng.random((1 << m) - 1)
    return capacity_from_mobius(MobiusCapacity(m, masses / masses.sum()))


def random_monotone_capacity(rng: np.random.Generator, m: int) -> Capacity:
    """Monotone but usually neither concave nor convex"""
    values = rng.random(1 << m)
    values[0] = 0.0
    masks = np.arange(1 << m)
    for i in range(m):
        upper = masks[masks >> i & 1 == 1]
        values[upper] = np.maximum(values[upper], values[upper ^ (1 << i)])
    values /= values[-1]
    return Capacity(values)


def pairwise_concave(v: Capacity, tol: float = 1e-9) -> bool:
    """v(A∪B) + v(A∩B) ≤ v(A) + v(B) checked on every pair of events"""
    values = v.values
    masks = np.arange(1 << v.m)
    a, b = np.meshgrid(masks, masks, indexing='ij')
    return bool(np.all(values[a | b] + values[a & b] <= values[a] + values[b] + tol))


def small_instance(seed: int):
    """8 to 12 nodes, m in {2, 3, 4}, v1 and v2 capacities, exponents 1 to 3"""
    return generate(
        num_nodes=8 + seed % 5,
        density=0.45,
        m=2 + seed % 3,
        capacity_kind='v1' if seed % 2 == 0 else 'v2',
        seed=seed,
        exponent=1.0 + seed % 3,
    )
