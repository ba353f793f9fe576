"""Tests for result files, manifest and archive."""

import io
import json
import zipfile

import numpy as np

from qwalk import __version__
from qwalk.exporter import (
    PROVENANCE_PREFIX,
    ResultExporter,
    config_hash,
    read_csv_columns,
    read_provenance,
    read_svg_provenance,
)
from qwalk.plotting import plot_power_law

CONFIG = {"experiment": "qfi", "steps": 3, "master_seed": 4}


def _exporter(tmp_path):
    return ResultExporter(tmp_path, CONFIG, master_seed=4, semantics="bernoulli-uniform")


class TestConfigHash:
    def test_key_order_irrelevant(self):
        assert config_hash({"a": 1, "b": 2}) == config_hash({"b": 2, "a": 1})

    def test_value_sensitive(self):
        assert config_hash({"a": 1}) != config_hash({"a": 2})


class TestResultExporter:
    """Tests for CSV / JSON writers."""

    def test_csv_layout(self, tmp_path):
        path = _exporter(tmp_path).write_csv("qfi.csv", ["t", "qfi_mean"], [(0, 0.0), (1, 0.5)], phi=0.0)
        lines = path.read_text().splitlines()
        assert lines[0].startswith(PROVENANCE_PREFIX)
        assert lines[1] == "t,qfi_mean"
        assert lines[2] == "0,0"
        assert lines[3] == "1,0.5"

    def test_csv_provenance(self, tmp_path):
        path = _exporter(tmp_path).write_csv("qfi.csv", ["t"], [(0,)], phi=0.25)
        provenance = read_provenance(path)
        assert provenance["config_hash"] == config_hash(CONFIG)
        assert provenance["master_seed"] == 4
        assert provenance["semantics"] == "bernoulli-uniform"
        assert provenance["version"] == __version__
        assert provenance["phi"] == 0.25

    def test_csv_round_trip_of_floats(self, tmp_path):
        values = [0.1, 1 / 3, 2.5e-17]
        path = _exporter(tmp_path).write_csv("v.csv", ["t", "variance"], list(enumerate(values)))
        columns = read_csv_columns(path)
        np.testing.assert_array_equal(columns["variance"], values)
        np.testing.assert_array_equal(columns["t"], [0, 1, 2])

    def test_file_without_provenance(self, tmp_path):
        path = tmp_path / "plain.csv"
        path.write_text("t,qfi_mean\n0,0\n")
        assert read_provenance(path) is None

    def test_json_has_inline_provenance(self, tmp_path):
        path = _exporter(tmp_path).write_json("qfi.json", {"series": {"t": [0, 1]}})
        document = json.loads(path.read_text())
        assert document["provenance"]["master_seed"] == 4
        assert document["series"]["t"] == [0, 1]

    def test_manifest_lists_files(self, tmp_path):
        exporter = _exporter(tmp_path)
        exporter.write_csv("qfi.csv", ["t"], [(0,)])
        manifest = json.loads(exporter.write_manifest(output=str(tmp_path)).read_text())
        assert manifest["config"] == CONFIG
        assert manifest["files"] == ["qfi.csv"]
        assert manifest["software"]["qwalk"] == __version__
        assert manifest["provenance"]["config_hash"] == config_hash(CONFIG)

    def test_identical_runs_identical_bytes(self, tmp_path):
        paths = []
        for name in ("a", "b"):
            exporter = ResultExporter(tmp_path / name, CONFIG, 4, "bernoulli-uniform")
            paths.append(exporter.write_csv("qfi.csv", ["t", "qfi_mean"], [(0, 0.0), (1, 1 / 7)]))
        assert paths[0].read_bytes() == paths[1].read_bytes()

    def test_archive(self, tmp_path):
        exporter = _exporter(tmp_path)
        exporter.write_csv("qfi.csv", ["t"], [(0,)])
        exporter.write_manifest()
        archive = exporter.write_archive()
        with zipfile.ZipFile(io.BytesIO(archive.read_bytes())) as zf:
            assert sorted(zf.namelist()) == ["manifest.json", "qfi.csv"]
        assert exporter.create_export_zip() == archive.read_bytes()


class TestFigureProvenance:
    """Tests for provenance embedded in SVG figures."""

    def _figure(self, exporter, provenance):
        t = np.arange(1, 11, dtype=float)
        return plot_power_law(exporter.figure_path("qfi.svg"), {"ordered": (t, t ** 2)}, "QFI", "qfi", None,
                              provenance)

    def test_read_back(self, tmp_path):
        exporter = _exporter(tmp_path)
        path = self._figure(exporter, exporter.provenance())
        assert read_svg_provenance(path) == exporter.provenance()

    def test_figure_without_provenance(self, tmp_path):
        assert read_svg_provenance(self._figure(_exporter(tmp_path), None)) is None

    def test_figures_listed_in_manifest(self, tmp_path):
        exporter = _exporter(tmp_path)
        exporter.write_csv("qfi.csv", ["t"], [(0,)])
        self._figure(exporter, exporter.provenance())
        manifest = json.loads(exporter.write_manifest().read_text())
        assert manifest["files"] == ["qfi.csv", "qfi.svg"]
