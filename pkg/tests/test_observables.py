"""Tests for position distributions and variance."""

import math

import numpy as np
import pytest

from qwalk.disorder import generate_map, ordered_map
from qwalk.errors import NormalizationError
from qwalk.hilbert import new_single_state, new_two_particle_state
from qwalk.metrology import evolve
from qwalk.observables import PositionDistribution, mean_position, position_distribution, position_variance


def _final(initial, phase_map):
    state = initial
    for _, state in evolve(initial, phase_map, with_derivative=False):
        pass
    return state


class TestPositionDistribution:
    """Tests for p(x) = sum_c |psi(x, c)|^2."""

    def test_origin(self):
        dist = position_distribution(new_single_state(0, (1, 0), 2))
        assert dist.as_dict() == {0: 1.0}

    def test_two_steps_ordered(self):
        dist = position_distribution(_final(new_single_state(0, (1, 0), 2), ordered_map(2)))
        expected = {-2: 0.25, 0: 0.5, 2: 0.25}
        got = dist.as_dict(cutoff=1e-15)
        assert got.keys() == expected.keys()
        for x, p in expected.items():
            assert got[x] == pytest.approx(p, abs=1e-12)

    def test_positions_axis(self):
        dist = position_distribution(new_single_state(0, (1, 0), 3))
        np.testing.assert_array_equal(dist.positions, np.arange(-3, 4))
        assert dist.t_max == 3

    @pytest.mark.parametrize("kind", ["static", "dynamic"])
    def test_sums_to_one_under_disorder(self, kind):
        state = _final(new_single_state(0, (1, 0), 40), generate_map(kind, 40, 1.0, seed=3))
        assert position_distribution(state).probabilities.sum() == pytest.approx(1.0, abs=1e-12)

    def test_unnormalized_state(self):
        state = new_single_state(0, (1, 0), 2)
        with pytest.raises(NormalizationError):
            position_distribution(state.with_amplitudes(0.5 * state.amplitudes))

    def test_rejects_even_width(self):
        with pytest.raises(ValueError):
            PositionDistribution(np.ones(4) / 4)


class TestTwoParticleMarginals:
    """Tests for single-particle marginals of joint states."""

    @pytest.mark.parametrize("kind", ["boson", "fermion"])
    def test_marginals_coincide(self, kind):
        state = _final(new_two_particle_state(kind, 6), generate_map("dynamic", 6, 1.0, seed=2))
        first = position_distribution(state, particle=1).probabilities
        second = position_distribution(state, particle=2).probabilities
        np.testing.assert_allclose(first, second, atol=1e-12)

    def test_separable_marginal_is_single_walk(self):
        phase_map = generate_map("static", 6, 1.0, seed=4)
        joint = _final(new_two_particle_state("separable", 6), phase_map)
        single = _final(new_single_state(0, (1, 0), 6), phase_map)
        np.testing.assert_allclose(
            position_distribution(joint, particle=1).probabilities,
            position_distribution(single).probabilities,
            atol=1e-12,
        )

    def test_invalid_particle(self):
        with pytest.raises(ValueError):
            position_distribution(new_two_particle_state("boson", 2), particle=3)


class TestVariance:
    """Tests for sigma^2(X) = <X^2> - <X>^2."""

    def test_delta_has_zero_variance(self):
        assert position_variance(position_distribution(new_single_state(1, (1, 0), 2))) == 0.0

    def test_two_steps_ordered(self):
        dist = position_distribution(_final(new_single_state(0, (1, 0), 2), ordered_map(2)))
        assert mean_position(dist) == pytest.approx(0.0, abs=1e-12)
        assert position_variance(dist) == pytest.approx(2.0, abs=1e-12)

    def test_two_point_distribution(self):
        dist = PositionDistribution(np.array([0.5, 0.0, 0.5]))
        assert mean_position(dist) == 0.0
        assert position_variance(dist) == 1.0

    def test_mean_of_off_center_delta(self):
        assert mean_position(position_distribution(new_single_state(-2, (0, 1), 3))) == -2.0

    def test_ordered_symmetric_input_distribution(self):
        a = 1 / math.sqrt(2)
        dist = position_distribution(_final(new_single_state(0, (a, a), 30), ordered_map(30)))
        assert dist.probabilities.sum() == pytest.approx(1.0, abs=1e-12)
        assert position_variance(dist) > 0.0
