"""Shared fixtures: the worked examples, small graphs and random capacities"""

from pathlib import Path as FilePath

import numpy as np
import pytest

from src.core.capacity import Capacity
from src.core.choquet import DisutilityFn
from src.core.graph import StateSpaceGraph
from src.instances.instance import EXAMPLE1_CAPACITY, EXAMPLE3_CAPACITY, example1_instance, example3_instance

FIXTURES = FilePath(__file__).resolve().parent.parent / 'fixtures'


@pytest.fixture
def fixtures_dir() -> FilePath:
    return FIXTURES


@pytest.fixture
def example1_capacity() -> Capacity:
    return Capacity.from_table(3, EXAMPLE1_CAPACITY)


@pytest.fixture
def example3_capacity() -> Capacity:
    return Capacity.from_table(3, EXAMPLE3_CAPACITY)


@pytest.fixture
def example1():
    return example1_instance()


@pytest.fixture
def example3():
    return example3_instance()


@pytest.fixture
def binary_w() -> DisutilityFn:
    """w(0) = 0 and w(100) = 1"""
    return DisutilityFn.power(1.0, scale=100.0)


@pytest.fixture
def diamond() -> StateSpaceGraph:
    """s=0 -> {1, 2} -> goal 3"""
    arcs = [
        (0, 1, (1, 4)),
        (0, 2, (3, 1)),
        (1, 3, (2, 2)),
        (2, 3, (1, 2)),
    ]
    return StateSpaceGraph(4, 2, arcs, start=0, goals=[3])


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20070101)
