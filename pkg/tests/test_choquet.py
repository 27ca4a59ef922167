"""Tests for the Choquet integral and Choquet expected disutility"""

import numpy as np
import pytest

from src.core.capacity import (
    Capacity,
    ProbabilityVector,
    capacity_additive,
    capacity_vacuous,
    max_entropy,
    shapley,
)
from src.core.choquet import (
    CedEvaluator,
    DisutilityFn,
    ced,
    choquet_batch,
    choquet_integral,
    cost_vector,
    linear_lower_bound,
    scalarize,
)
from src.errors import CostError, DimensionError, DisutilityError
from tests.helpers import random_concave_capacity, random_simplex

THIRD = 1.0 / 3.0


@pytest.fixture
def example2_capacity():
    """v({1}) = v({2}) = 2/3"""
    return Capacity([0.0, 2 * THIRD, 2 * THIRD, 1.0])


def random_convex_w(rng, scale):
    return DisutilityFn.power(float(rng.choice([1.0, 1.5, 2.0, 3.0])), scale=scale)


class TestChoquetIntegral:
    def test_example1_level_set(self, example1_capacity):
        assert choquet_integral(example1_capacity, [0, 1, 1]) == pytest.approx(2 * THIRD)

    def test_both_forms_agree(self, rng):
        for _ in range(200):
            m = int(rng.integers(1, 6))
            v = random_concave_capacity(rng, m)
            z = rng.random((5, m)) * 10
            assert choquet_batch(v, z, form=1) == pytest.approx(choquet_batch(v, z, form=2), abs=1e-12)

    def test_ties_do_not_matter(self, example3_capacity):
        assert choquet_integral(example3_capacity, [2, 2, 2]) == pytest.approx(2.0)
        assert choquet_integral(example3_capacity, [0, 1, 1]) == pytest.approx(0.7)

    def test_additive_capacity_gives_expectation(self, rng):
        for _ in range(50):
            p = random_simplex(rng, 4)
            z = rng.random(4)
            assert choquet_integral(capacity_additive(p), z) == pytest.approx(float(p.p @ z))

    def test_vacuous_capacity_gives_maximum(self, rng):
        v = capacity_vacuous(4)
        for _ in range(100):
            z = rng.random(4) * 100
            assert choquet_integral(v, z) == z.max()

    def test_batch_shape_checked(self, example1_capacity):
        with pytest.raises(DimensionError):
            choquet_batch(example1_capacity, np.zeros((2, 2)))

    def test_unknown_form(self, example1_capacity):
        with pytest.raises(ValueError):
            choquet_batch(example1_capacity, np.zeros((1, 3)), form=3)


class TestCed:
    @pytest.mark.parametrize("x, expected", [
        ((0, 100, 100), 2 * THIRD),
        ((100, 0, 100), 1.0),
        ((0, 100, 0), 2 * THIRD),
        ((100, 0, 0), THIRD),
    ])
    def test_example1_table(self, example1_capacity, binary_w, x, expected):
        assert ced(example1_capacity, binary_w, x) == pytest.approx(expected, abs=1e-12)

    @pytest.mark.parametrize("x, expected", [
        ((0, 100, 0), 0.5),
        ((100, 0, 0), 0.4),
        ((100, 0, 100), 0.8),
        ((0, 100, 100), 0.7),
    ])
    def test_example3_values(self, example3_capacity, binary_w, x, expected):
        assert ced(example3_capacity, binary_w, x) == pytest.approx(expected, abs=1e-12)

    def test_example2_convex_w(self, example2_capacity):
        w = DisutilityFn.power(2.0, scale=10.0)
        assert ced(example2_capacity, w, (10, 0)) == pytest.approx(2 * THIRD, abs=1e-12)
        assert ced(example2_capacity, w, (0, 10)) == pytest.approx(2 * THIRD, abs=1e-12)
        assert ced(example2_capacity, w, (5, 5)) == pytest.approx(0.25, abs=1e-12)

    def test_example2_concave_w_reverses_preference(self, example2_capacity):
        w = DisutilityFn.power(0.5, scale=10.0)
        extreme = ced(example2_capacity, w, (10, 0))
        balanced = ced(example2_capacity, w, (5, 5))
        assert extreme == pytest.approx(0.6667, abs=1e-3)
        assert balanced == pytest.approx(0.7071, abs=1e-3)
        assert extreme < balanced

    def test_min_max_reduction(self, rng):
        v = capacity_vacuous(3)
        w = DisutilityFn.power(2.0, scale=100.0)
        for _ in range(100):
            x = rng.integers(0, 101, size=3).astype(float)
            assert ced(v, w, x) == w(x).max()

    def test_cost_above_scale(self, example1_capacity, binary_w):
        with pytest.raises(DisutilityError, match="exceeds"):
            ced(example1_capacity, binary_w, (0, 150, 0))

    def test_negative_cost(self, example1_capacity, binary_w):
        with pytest.raises(CostError):
            ced(example1_capacity, binary_w, (0, -1, 0))

    def test_wrong_length(self, example1_capacity, binary_w):
        with pytest.raises(DimensionError):
            ced(example1_capacity, binary_w, (0, 1))

    def test_convexity_of_psi(self, rng):
        for _ in range(500):
            m = int(rng.integers(2, 5))
            v = random_concave_capacity(rng, m)
            w = random_convex_w(rng, 100.0)
            x, y = rng.random(m) * 100, rng.random(m) * 100
            a = rng.random()
            mix = ced(v, w, a * x + (1 - a) * y)
            assert mix <= a * ced(v, w, x) + (1 - a) * ced(v, w, y) + 1e-9

    def test_lower_bounds_hold_for_core_probabilities(self, rng):
        for _ in range(500):
            m = int(rng.integers(2, 5))
            v = random_concave_capacity(rng, m)
            w = random_convex_w(rng, 100.0)
            x = rng.random(m) * 100
            psi = ced(v, w, x)
            for p in (shapley(v), max_entropy(v)):
                strong, weak = linear_lower_bound(p, w, x)
                assert psi >= strong - 1e-9
                assert strong >= weak - 1e-9

    def test_example1_lower_bound(self, example1_capacity, binary_w):
        p = ProbabilityVector([THIRD] * 3)
        strong, weak = linear_lower_bound(p, binary_w, (100, 0, 100))
        assert strong == pytest.approx(2 * THIRD)
        assert weak == pytest.approx(2 * THIRD)
        assert ced(example1_capacity, binary_w, (100, 0, 100)) >= strong


class TestDisutility:
    def test_power_values(self):
        w = DisutilityFn.power(2.0, scale=10.0)
        assert w(0.0) == 0.0
        assert w(10.0) == 1.0
        assert w(np.array([5.0])) == pytest.approx([0.25])

    def test_identity(self):
        w = DisutilityFn.identity()
        assert w(3.5) == 3.5
        assert w.is_convex and w.is_resolved

    def test_convexity_flag(self):
        assert DisutilityFn.power(1.0).is_convex
        assert not DisutilityFn.power(0.5).is_convex

    def test_unresolved_scale(self):
        w = DisutilityFn.power(2.0)
        assert not w.is_resolved
        with pytest.raises(DisutilityError):
            w(1.0)
        assert w.with_scale(50.0)(50.0) == 1.0

    def test_with_scale_keeps_explicit_scale(self):
        w = DisutilityFn.power(2.0, scale=10.0)
        assert w.with_scale(99.0) is w

    @pytest.mark.parametrize("kwargs", [
        {'kind': 'log'},
        {'kind': 'power', 'exponent': 0.0},
        {'kind': 'power', 'exponent': 1.0, 'scale': -1.0},
        {'kind': 'power', 'exponent': '2'},
        {'kind': 'power', 'exponent': True},
        {'kind': 'power', 'exponent': 2.0, 'scale': '100'},
    ])
    def test_invalid_parameters(self, kwargs):
        with pytest.raises(DisutilityError):
            DisutilityFn(**kwargs)

    def test_dict_round_trip(self):
        for w in (DisutilityFn.power(2.0), DisutilityFn.power(1.5, 40.0), DisutilityFn.identity()):
            assert DisutilityFn.from_dict(w.to_dict()) == w


class TestHelpers:
    def test_scalarize(self):
        assert scalarize(ProbabilityVector([0.25, 0.75]), (4, 8)) == pytest.approx(7.0)

    def test_cost_vector_validation(self):
        with pytest.raises(CostError):
            cost_vector([1.0, float('inf')])
        with pytest.raises(DimensionError):
            cost_vector([1.0, 2.0], m=3)

    def test_evaluator_matches_ced(self, rng):
        v = random_concave_capacity(rng, 3)
        w = DisutilityFn.power(2.0, scale=100.0)
        evaluator = CedEvaluator(v, w)
        xs = rng.random((10, 3)) * 100
        batch = evaluator.psi_batch(xs)
        for x, value in zip(xs, batch):
            assert value == pytest.approx(ced(v, w, x), abs=1e-15)
            assert evaluator.psi(x) == pytest.approx(value, abs=1e-15)

    def test_evaluator_allows_costs_above_scale(self, example1_capacity, binary_w):
        assert CedEvaluator(example1_capacity, binary_w).psi([200, 0, 0]) == pytest.approx(2 * THIRD)

    def test_evaluator_needs_resolved_scale(self, example1_capacity):
        with pytest.raises(DisutilityError):
            CedEvaluator(example1_capacity, DisutilityFn.power(2.0))
