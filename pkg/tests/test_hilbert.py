"""Tests for walker states, inner products and two-particle inputs."""

import math

import numpy as np
import pytest

from qwalk.errors import LatticeBoundaryError, NormalizationError
from qwalk.hilbert import (
    DOWN,
    UP,
    DerivativePair,
    Symmetry,
    inner_product,
    new_single_state,
    new_two_particle_state,
    product_state,
)


class TestSingleState:
    """Tests for localized single-walker inputs."""

    def test_up_walker_at_origin(self):
        state = new_single_state(0, (1, 0), t_max=3)
        assert state.amplitudes.shape == (7, 2)
        assert state.amplitude(0, UP) == 1
        assert state.amplitude(0, DOWN) == 0
        assert state.norm_squared() == pytest.approx(1.0, abs=1e-15)

    def test_balanced_coin_off_origin(self):
        a = 1 / math.sqrt(2)
        state = new_single_state(-2, (a, 1j * a), t_max=4)
        assert state.amplitude(-2, UP) == pytest.approx(a)
        assert state.amplitude(-2, DOWN) == pytest.approx(1j * a)
        assert state.support_radius() == 2

    def test_position_outside_lattice(self):
        with pytest.raises(LatticeBoundaryError):
            new_single_state(4, (1, 0), t_max=3)

    def test_unnormalized_coin(self):
        with pytest.raises(NormalizationError):
            new_single_state(0, (1, 1), t_max=3)

    def test_zero_capacity(self):
        with pytest.raises(ValueError):
            new_single_state(0, (1, 0), t_max=0)


class TestInnerProduct:
    """Tests for <a|b>."""

    def test_orthogonal_coins(self):
        up = new_single_state(0, (1, 0), 2)
        down = new_single_state(0, (0, 1), 2)
        assert inner_product(up, down) == 0
        assert inner_product(up, up) == 1

    def test_conjugate_linear_in_first_argument(self):
        a = new_single_state(0, (1j, 0), 2)
        b = new_single_state(0, (1, 0), 2)
        assert inner_product(a, b) == pytest.approx(-1j)

    def test_mismatched_capacity(self):
        with pytest.raises(LatticeBoundaryError):
            inner_product(new_single_state(0, (1, 0), 2), new_single_state(0, (1, 0), 3))

    def test_mismatched_kinds(self):
        with pytest.raises(TypeError):
            inner_product(new_single_state(0, (1, 0), 2), new_two_particle_state("boson", 2))


class TestTwoParticleState:
    """Tests for separable, boson and fermion inputs."""

    @pytest.mark.parametrize("kind", list(Symmetry))
    def test_normalized(self, kind):
        state = new_two_particle_state(kind, 3)
        assert state.norm_squared() == pytest.approx(1.0, abs=1e-15)
        assert state.symmetry is kind

    def test_boson_symmetric(self):
        state = new_two_particle_state("boson", 3)
        assert state.exchange_residual() == 0.0
        assert state.amplitude(0, UP, 0, DOWN) == pytest.approx(1 / math.sqrt(2))
        assert state.amplitude(0, DOWN, 0, UP) == pytest.approx(1 / math.sqrt(2))

    def test_fermion_antisymmetric(self):
        state = new_two_particle_state("fermion", 3)
        assert state.exchange_residual() == 0.0
        assert state.amplitude(0, DOWN, 0, UP) == pytest.approx(-1 / math.sqrt(2))

    def test_separable_needs_explicit_sign(self):
        state = new_two_particle_state("separable", 3)
        with pytest.raises(ValueError):
            state.exchange_residual()
        assert state.exchange_residual(sign=1) == pytest.approx(1.0)

    def test_separable_matches_product_state(self):
        up = new_single_state(0, (1, 0), 3)
        down = new_single_state(0, (0, 1), 3)
        np.testing.assert_array_equal(
            product_state(up, down).amplitudes,
            new_two_particle_state("separable", 3).amplitudes,
        )

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            new_two_particle_state("anyon", 3)


class TestDerivativePair:
    def test_start_has_zero_derivative(self):
        pair = DerivativePair.start(new_single_state(0, (1, 0), 2))
        assert not np.any(pair.dpsi.amplitudes)

    def test_rejects_mismatched_shapes(self):
        with pytest.raises(ValueError):
            DerivativePair(new_single_state(0, (1, 0), 2), new_single_state(0, (1, 0), 3))
