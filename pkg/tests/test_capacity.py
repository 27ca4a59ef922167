"""Tests for capacities, duals, core membership and core probabilities"""

import numpy as np
import pytest

from src.core.capacity import (
    Capacity,
    MobiusCapacity,
    ProbabilityVector,
    ScenarioSet,
    capacity_additive,
    capacity_from_mobius,
    capacity_v1,
    capacity_vacuous,
    core_contains,
    dual,
    entropy,
    is_concave,
    is_convex,
    max_entropy,
    shapley,
)
from src.errors import CapacityError, DimensionError
from tests.helpers import pairwise_concave, random_concave_capacity, random_monotone_capacity, random_simplex

THIRD = 1.0 / 3.0


def event(*scenarios):
    """Bitmask of 1-based scenario numbers"""
    return ScenarioSet.of([s - 1 for s in scenarios], 3)


class TestCapacity:
    def test_example1_values(self, example1_capacity):
        assert example1_capacity[event(1)] == pytest.approx(THIRD)
        assert example1_capacity[event(2, 3)] == pytest.approx(2 * THIRD)
        assert example1_capacity[event(1, 2, 3)] == 1.0
        assert example1_capacity[0] == 0.0

    def test_rejects_wrong_size(self):
        with pytest.raises(CapacityError):
            Capacity([0.0, 0.5, 1.0])

    def test_rejects_nonzero_empty_set(self):
        with pytest.raises(CapacityError, match="v\\(∅\\)"):
            Capacity([0.1, 0.5, 0.5, 1.0])

    def test_rejects_full_set_below_one(self):
        with pytest.raises(CapacityError, match="v\\(S\\)"):
            Capacity([0.0, 0.5, 0.5, 0.9])

    def test_rejects_non_monotone(self):
        with pytest.raises(CapacityError, match="not monotone"):
            Capacity([0.0, 0.8, 0.2, 0.7, 0.1, 0.9, 0.5, 1.0])

    def test_boundary_values_are_snapped(self):
        v = Capacity([1e-12, 0.5, 0.5, 1.0 - 1e-12])
        assert v[0] == 0.0
        assert v[3] == 1.0

    def test_table_round_trip(self, example3_capacity):
        assert Capacity.from_table(3, example3_capacity.to_table()) == example3_capacity

    def test_from_table_missing_mask(self):
        with pytest.raises(CapacityError, match="missing"):
            Capacity.from_table(2, {0: 0.0, 1: 0.5, 3: 1.0})

    def test_values_are_read_only(self, example1_capacity):
        with pytest.raises(ValueError):
            example1_capacity.values[1] = 0.0

    def test_scenario_set_operations(self):
        a, b = event(1, 2), event(2, 3)
        assert a.union(b) == ScenarioSet.full(3)
        assert a.intersection(b) == event(2)
        assert a.complement() == event(3)
        assert event(2).issubset(a)
        assert list(a) == [0, 1]
        assert len(b) == 2
        with pytest.raises(DimensionError):
            ScenarioSet.of([3], 3)


class TestProbabilityVector:
    def test_rejects_bad_sum(self):
        with pytest.raises(CapacityError):
            ProbabilityVector([0.5, 0.6])

    def test_rejects_negative(self):
        with pytest.raises(CapacityError):
            ProbabilityVector([1.5, -0.5])

    def test_event_probabilities(self):
        p = ProbabilityVector([0.2, 0.3, 0.5])
        assert p.event_probabilities() == pytest.approx([0.0, 0.2, 0.3, 0.5, 0.5, 0.7, 0.8, 1.0])


class TestDual:
    def test_example1_dual(self, example1_capacity):
        vbar = dual(example1_capacity)
        assert vbar[event(1)] == pytest.approx(THIRD)
        assert vbar[event(2)] == pytest.approx(0.0, abs=1e-15)
        assert vbar[event(3)] == pytest.approx(0.0, abs=1e-15)
        assert vbar[event(2, 3)] == pytest.approx(2 * THIRD)

    def test_involution(self, example1_capacity, rng):
        assert np.allclose(dual(dual(example1_capacity)).values, example1_capacity.values, atol=1e-15)
        for _ in range(20):
            v = random_monotone_capacity(rng, 4)
            assert np.allclose(dual(dual(v)).values, v.values, atol=1e-15)


class TestConcavity:
    def test_example1(self, example1_capacity):
        assert is_concave(example1_capacity)
        assert not is_concave(dual(example1_capacity))
        assert is_convex(dual(example1_capacity))

    def test_example3_completion_is_concave(self, example3_capacity):
        assert is_concave(example3_capacity)

    def test_additive_is_both(self):
        v = capacity_additive(ProbabilityVector([0.2, 0.3, 0.5]))
        assert is_concave(v)
        assert is_convex(v)

    @pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
    def test_local_test_matches_pairwise_definition(self, rng, m):
        for _ in range(40):
            v = random_monotone_capacity(rng, m)
            assert is_concave(v) == pairwise_concave(v)
            assert is_convex(v) == pairwise_concave(dual(v))

    @pytest.mark.parametrize("m", [2, 3, 4])
    def test_v1_and_plausibility_are_concave(self, rng, m):
        for _ in range(25):
            assert is_concave(capacity_v1(random_simplex(rng, m)))
            masses = np.zeros(1 << m)
            masses[1:] = rng.random((1 << m) - 1)
            assert is_concave(capacity_from_mobius(MobiusCapacity(m, masses / masses.sum())))

    def test_v1_formula(self):
        v = capacity_v1(ProbabilityVector([0.2, 0.3, 0.5]))
        # complement of {1} has mass 0.8
        assert v[1] == pytest.approx(1.0 - 0.8 ** 2)
        assert v[6] == pytest.approx(1.0 - 0.2 ** 2)

    def test_plausibility_formula(self):
        masses = MobiusCapacity.from_table(2, {1: 0.25, 2: 0.25, 3: 0.5})
        v = capacity_from_mobius(masses)
        # {1} meets the focal sets {1} and {1,2}
        assert v[1] == pytest.approx(0.75)
        assert v[2] == pytest.approx(0.75)
        assert v[3] == 1.0

    def test_mobius_masses_must_sum_to_one(self):
        with pytest.raises(CapacityError):
            MobiusCapacity(2, np.array([0.0, 0.5, 0.2, 0.2]))

    def test_mobius_mask_out_of_range(self):
        with pytest.raises(CapacityError, match="out of range"):
            MobiusCapacity.from_table(3, {9: 1.0})

    def test_vacuous(self):
        v = capacity_vacuous(3)
        assert v.values.tolist() == [0.0] + [1.0] * 7
        assert is_concave(v)


class TestCore:
    def test_example1_uniform_in_core(self, example1_capacity):
        assert core_contains(example1_capacity, ProbabilityVector([THIRD, THIRD, THIRD]))

    def test_example1_point_mass_outside_core(self, example1_capacity):
        assert not core_contains(example1_capacity, ProbabilityVector([0.0, 1.0, 0.0]))

    def test_requires_concave_capacity(self, example1_capacity):
        with pytest.raises(CapacityError):
            core_contains(dual(example1_capacity), ProbabilityVector([THIRD, THIRD, THIRD]))

    def test_dimension_mismatch(self, example1_capacity):
        with pytest.raises(DimensionError):
            core_contains(example1_capacity, ProbabilityVector([0.5, 0.5]))

    def test_additive_core_is_its_probability(self):
        p = ProbabilityVector([0.2, 0.3, 0.5])
        v = capacity_additive(p)
        assert core_contains(v, p)
        assert not core_contains(v, ProbabilityVector([0.3, 0.2, 0.5]))


class TestCoreProbabilities:
    def test_example1_shapley(self, example1_capacity):
        assert shapley(example1_capacity).p == pytest.approx([THIRD] * 3, abs=1e-12)

    def test_example1_max_entropy(self, example1_capacity):
        assert max_entropy(example1_capacity).p == pytest.approx([THIRD] * 3, abs=1e-9)

    def test_additive_returns_its_probability(self):
        p = ProbabilityVector([0.2, 0.3, 0.5])
        v = capacity_additive(p)
        assert shapley(v).p == pytest.approx(p.p)
        assert max_entropy(v).p == pytest.approx(p.p)

    def test_vacuous_gives_uniform(self):
        assert max_entropy(capacity_vacuous(4)).p == pytest.approx([0.25] * 4)
        assert shapley(capacity_vacuous(4)).p == pytest.approx([0.25] * 4)

    @pytest.mark.parametrize("m", [2, 3, 4, 5])
    def test_both_lie_in_core(self, rng, m):
        for _ in range(20):
            v = random_concave_capacity(rng, m)
            phi, pstar = shapley(v), max_entropy(v)
            assert phi.p.sum() == pytest.approx(1.0)
            assert core_contains(v, phi)
            assert core_contains(v, pstar)
            # p* maximizes entropy over the core, which contains φ
            assert entropy(pstar) >= entropy(phi) - 1e-9

    def test_non_concave_rejected(self, example1_capacity):
        with pytest.raises(CapacityError):
            shapley(dual(example1_capacity))
        with pytest.raises(CapacityError):
            max_entropy(dual(example1_capacity))

    def test_entropy(self):
        assert entropy(ProbabilityVector([1.0, 0.0])) == 0.0
        assert entropy(ProbabilityVector([0.5, 0.5])) == pytest.approx(np.log(2))

    @pytest.mark.parametrize("p, expected", [
        ([0.3, 0.7], 0.6109),
        ([THIRD] * 3, np.log(3)),
    ])
    def test_entropy_values(self, p, expected):
        assert entropy(ProbabilityVector(p)) == pytest.approx(expected, abs=1e-4)

    def test_two_scenario_shapley(self):
        assert shapley(Capacity([0.0, 0.9, 0.7, 1.0])).p == pytest.approx([0.6, 0.4])

    @pytest.mark.parametrize("singletons, expected", [
        ((0.6, 0.8), [0.5, 0.5]),
        ((0.3, 0.9), [0.3, 0.7]),
    ])
    def test_two_scenario_max_entropy(self, singletons, expected):
        v = Capacity([0.0, singletons[0], singletons[1], 1.0])
        assert max_entropy(v).p == pytest.approx(expected)
