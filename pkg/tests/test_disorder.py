"""Tests for phase-map generation and serialization."""

import json
import math

import numpy as np
import pytest
from pydantic import ValidationError

from qwalk.disorder import (
    DisorderKind,
    DisorderSemantics,
    PhaseMap,
    PhaseMapRecord,
    disorder_fraction,
    generate_map,
    load_phase_maps,
    ordered_map,
    pi_cell_count,
)
from qwalk.errors import DisorderError


class TestGenerateMap:
    """Tests for static and dynamic map sampling."""

    @pytest.mark.parametrize("kind", ["static", "dynamic"])
    def test_zero_degree_is_ordered(self, kind):
        phase_map = generate_map(kind, 10, 0.0, seed=3)
        assert phase_map.entries.shape == (10, 21)
        assert disorder_fraction(phase_map) == 0.0

    def test_static_rows_repeat(self):
        phase_map = generate_map("static", 12, 1.0, seed=5)
        assert phase_map.is_frozen()
        assert phase_map.entries.any()

    def test_dynamic_rows_differ(self):
        phase_map = generate_map("dynamic", 12, 1.0, seed=5)
        assert not phase_map.is_frozen()

    @pytest.mark.parametrize("kind", ["static", "dynamic"])
    def test_same_seed_same_map(self, kind):
        a = generate_map(kind, 20, 0.4, seed=11)
        b = generate_map(kind, 20, 0.4, seed=11)
        np.testing.assert_array_equal(a.entries, b.entries)

    def test_different_seed_different_map(self):
        a = generate_map("dynamic", 20, 1.0, seed=1)
        b = generate_map("dynamic", 20, 1.0, seed=2)
        assert not np.array_equal(a.entries, b.entries)

    def test_bernoulli_full_degree_is_half_pi(self):
        phase_map = generate_map("dynamic", 100, 1.0, seed=0)
        assert disorder_fraction(phase_map) == pytest.approx(0.5, abs=0.02)

    def test_exact_fraction_dynamic(self):
        phase_map = generate_map("dynamic", 10, 0.5, DisorderSemantics.EXACT_PI_FRACTION, seed=0)
        assert int(phase_map.entries.sum()) == 105

    def test_exact_fraction_static_counts_one_row(self):
        phase_map = generate_map("static", 10, 0.5, "exact-pi-fraction", seed=0)
        assert int(phase_map.entries[0].sum()) == 10
        assert phase_map.is_frozen()

    @pytest.mark.parametrize("kind", ["static", "dynamic"])
    @pytest.mark.parametrize("p", [0.1, 0.5, 1.0])
    def test_bernoulli_fraction_over_realizations(self, kind, p):
        rows = [generate_map(kind, 10, p, seed=seed).entries[0] if kind == "static"
                else generate_map(kind, 10, p, seed=seed).entries for seed in range(1000)]
        cells = np.concatenate([np.ravel(r) for r in rows])
        expected = p / 2
        sigma = math.sqrt(expected * (1 - expected) / cells.size)
        assert abs(cells.mean() - expected) <= 3 * sigma

    @pytest.mark.parametrize("kind", ["static", "dynamic"])
    @pytest.mark.parametrize("steps", [7, 12, 33, 52])
    @pytest.mark.parametrize("percent", [10, 30, 57, 70, 90])
    def test_exact_fraction_count_grid(self, kind, steps, percent):
        phase_map = generate_map(kind, steps, percent / 100, "exact-pi-fraction", seed=3)
        width = 2 * steps + 1
        n_cells = width if kind == "static" else steps * width
        count = percent * n_cells // 100
        assert int(phase_map.entries[0].sum() if kind == "static" else phase_map.entries.sum()) == count
        assert disorder_fraction(phase_map) == pytest.approx(count / n_cells, abs=1e-15)

    def test_pi_cell_count_decimal_degree(self):
        assert pi_cell_count(0.57, 300) == 171
        assert pi_cell_count(0.7, 5460) == 3822
        assert pi_cell_count(1.0, 21) == 21
        assert pi_cell_count(0.0, 21) == 0

    def test_exact_fraction_full_degree_is_all_pi(self):
        phase_map = generate_map("dynamic", 5, 1.0, "exact-pi-fraction", seed=0)
        assert disorder_fraction(phase_map) == 1.0

    def test_entries_read_only(self):
        phase_map = generate_map("dynamic", 5, 1.0, seed=0)
        with pytest.raises(ValueError):
            phase_map.entries[0, 0] = 1

    @pytest.mark.parametrize("p", [-0.1, 1.5])
    def test_degree_out_of_range(self, p):
        with pytest.raises(DisorderError):
            generate_map("static", 5, p, seed=0)

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            generate_map("thermal", 5, 0.5, seed=0)

    def test_seed_recorded(self):
        assert generate_map("static", 5, 0.5, seed=42).seed == 42
        assert generate_map("static", 5, 0.5).seed is not None


class TestPhaseRow:
    """Tests for laying a map row onto lattices of other capacities."""

    def test_native_width(self):
        phase_map = generate_map("dynamic", 3, 1.0, seed=9)
        np.testing.assert_array_equal(phase_map.phase_row(2), phase_map.entries[1])

    def test_cropped_to_smaller_lattice(self):
        phase_map = generate_map("dynamic", 3, 1.0, seed=9)
        np.testing.assert_array_equal(phase_map.phase_row(1, t_max=1), phase_map.entries[0, 2:5])

    def test_padded_on_larger_lattice(self):
        phase_map = generate_map("dynamic", 3, 1.0, seed=9)
        row = phase_map.phase_row(3, t_max=5)
        assert row.shape == (11,)
        np.testing.assert_array_equal(row[2:9], phase_map.entries[2])
        assert not row[:2].any() and not row[9:].any()

    @pytest.mark.parametrize("t", [0, 4])
    def test_step_out_of_range(self, t):
        with pytest.raises(DisorderError):
            ordered_map(3).phase_row(t)


class TestSerialization:
    """Tests for the JSON exchange format."""

    def test_json_preserves_map(self):
        original = generate_map("static", 6, 0.3, seed=17)
        restored = PhaseMap.from_json(original.to_json())
        np.testing.assert_array_equal(restored.entries, original.entries)
        assert restored.kind is DisorderKind.STATIC
        assert restored.p == pytest.approx(0.3)
        assert restored.seed == 17

    def test_save_and_load(self, tmp_path):
        original = generate_map("dynamic", 4, 1.0, seed=8)
        path = tmp_path / "map.json"
        original.save(path)
        np.testing.assert_array_equal(PhaseMap.load(path).entries, original.entries)

    def test_load_list_of_records(self, tmp_path):
        maps = [generate_map("dynamic", 3, 1.0, seed=s) for s in range(3)]
        path = tmp_path / "maps.json"
        path.write_text(json.dumps([m.to_record().model_dump(mode="json") for m in maps]))
        loaded = load_phase_maps(path)
        assert len(loaded) == 3
        np.testing.assert_array_equal(loaded[2].entries, maps[2].entries)

    def test_rejects_non_binary_entries(self):
        with pytest.raises(ValidationError):
            PhaseMapRecord(kind="dynamic", p=1.0, T=1, entries=[[0, 2, 1]])

    def test_rejects_wrong_width(self):
        with pytest.raises(ValidationError):
            PhaseMapRecord(kind="dynamic", p=1.0, T=1, entries=[[0, 1]])

    def test_rejects_varying_static_rows(self):
        with pytest.raises(ValidationError):
            PhaseMapRecord(kind="static", p=1.0, T=2, entries=[[0, 1, 0, 0, 0], [1, 1, 0, 0, 0]])

    def test_rejects_unknown_fields(self):
        with pytest.raises(ValidationError):
            PhaseMapRecord(kind="none", p=0.0, T=1, entries=[[0, 0, 0]], comment="x")
