"""Tests for two-walker experiments."""

import numpy as np
import pytest
from pydantic import ValidationError

from qwalk.ensemble import DisorderSpec
from qwalk.hilbert import Symmetry
from qwalk.twoparticle import (
    TwoParticleExperiment,
    compare_statistics,
    run_two_particle,
    separable_reference,
)


def _experiment(**overrides):
    base = dict(disorder=DisorderSpec(kind="dynamic", p=1.0), steps=6, n_maps=4, master_seed=9)
    base.update(overrides)
    return TwoParticleExperiment(**base)


class TestTwoParticleExperiment:
    """Tests for the experiment model."""

    def test_defaults_to_bosons(self):
        assert _experiment().statistics is Symmetry.BOSON

    def test_rejects_unknown_fields(self):
        with pytest.raises(ValidationError):
            _experiment(particles="three")

    def test_ensemble_config_uses_two_walkers(self):
        config = _experiment(statistics="fermion").ensemble_config()
        assert config.initial.particles == "two"
        assert config.initial.statistics is Symmetry.FERMION
        assert config.observables == ["qfi"]


class TestRunTwoParticle:
    """Tests for joint QFI ensembles."""

    def test_ordered_boson_at_or_above_separable(self):
        ordered = DisorderSpec()
        boson = run_two_particle(_experiment(disorder=ordered, steps=12, n_maps=1), workers=1)
        separable = run_two_particle(_experiment(disorder=ordered, steps=12, n_maps=1, statistics="separable"), workers=1)
        assert np.all(boson.qfi_mean[2:] >= separable.qfi_mean[2:] - 1e-9)

    def test_separable_equals_sum_of_single_walkers(self):
        experiment = _experiment(statistics="separable")
        joint = run_two_particle(experiment, workers=1)
        references = separable_reference(experiment, workers=1)
        np.testing.assert_allclose(
            joint.qfi_mean, references["up"].qfi_mean + references["down"].qfi_mean, atol=1e-10
        )

    def test_reference_seeds_match(self):
        experiment = _experiment()
        references = separable_reference(experiment, workers=1)
        assert references["up"].member_seeds == run_two_particle(experiment, workers=1).member_seeds
        assert references["down"].config.initial.coin == ((0.0, 0.0), (1.0, 0.0))

    def test_compare_statistics(self):
        results = compare_statistics(_experiment(), workers=1)
        assert set(results) == set(Symmetry)
        boson = results[Symmetry.BOSON].qfi_mean
        fermion = results[Symmetry.FERMION].qfi_mean
        separable = results[Symmetry.SEPARABLE].qfi_mean
        np.testing.assert_allclose(boson + fermion, 2 * separable, atol=1e-9)

    @pytest.mark.slow
    def test_ordered_fifty_steps(self):
        ordered = DisorderSpec()
        boson = run_two_particle(_experiment(disorder=ordered, steps=50, n_maps=1))
        separable = run_two_particle(_experiment(disorder=ordered, steps=50, n_maps=1, statistics="separable"))
        assert np.all(boson.qfi_mean[2:] >= separable.qfi_mean[2:] - 1e-9)
