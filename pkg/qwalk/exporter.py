# -*- coding: utf-8 -*-
"""
Result serialization: CSV / JSON data files, the run manifest and a zip
archive of a run directory. Every file carries the provenance block.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import logging
import xml.etree.ElementTree as ET
import zipfile
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence

import numpy as np

from qwalk import __version__

logger = logging.getLogger(__name__)

PROVENANCE_PREFIX = "# provenance "
_DC_DESCRIPTION = "{http://purl.org/dc/elements/1.1/}description"
# fixed member timestamp so identical runs give identical archives
_ZIP_DATE_TIME = (1980, 1, 1, 0, 0, 0)


def canonical_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def config_hash(config: Dict[str, Any]) -> str:
    """sha256 of the canonical JSON form of a config dump."""
    return hashlib.sha256(canonical_json(config).encode("utf-8")).hexdigest()


def _format_cell(value: Any) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def read_provenance(path: Path) -> Optional[Dict[str, Any]]:
    """Provenance block of a CSV written by `ResultExporter`, or None."""
    with open(path, "r", encoding="utf-8") as f:
        first = f.readline()
    if not first.startswith(PROVENANCE_PREFIX):
        return None
    return json.loads(first[len(PROVENANCE_PREFIX):])


def read_svg_provenance(path: Path) -> Optional[Dict[str, Any]]:
    """Provenance block stored in the dc:description metadata of an SVG figure, or None."""
    node = ET.parse(path).getroot().find(f".//{_DC_DESCRIPTION}")
    if node is None or not node.text:
        return None
    return json.loads(node.text)


def read_csv_columns(path: Path) -> Dict[str, np.ndarray]:
    """Columns of a provenance CSV as float arrays keyed by header name."""
    with open(path, "r", encoding="utf-8", newline="") as f:
        rows = [row for row in csv.reader(line for line in f if not line.startswith("#")) if row]
    if not rows:
        raise ValueError(f"{path} holds no header row")
    header, body = rows[0], rows[1:]
    table = np.asarray(body, dtype=float).reshape(len(body), len(header))
    return {name: table[:, i] for i, name in enumerate(header)}


class ResultExporter:
    """
    Writes the artifacts of one run into ``out_dir``.

    ``config`` is the JSON dump of the run configuration; its hash, the master
    seed and the disorder semantics form the provenance block embedded in every
    file.
    """

    def __init__(self, out_dir: Path, config: Dict[str, Any], master_seed: Optional[int] = None,
                 semantics: Optional[str] = None):
        self.out_dir = Path(out_dir)
        self.config = config
        self.master_seed = master_seed
        self.semantics = semantics
        self.written: List[Path] = []

    def provenance(self, **extra: Any) -> Dict[str, Any]:
        block = {
            "config_hash": config_hash(self.config),
            "master_seed": self.master_seed,
            "semantics": self.semantics,
            "version": __version__,
        }
        block.update(extra)
        return block

    def _target(self, filename: str) -> Path:
        self.out_dir.mkdir(parents=True, exist_ok=True)
        path = self.out_dir / filename
        if path not in self.written:
            self.written.append(path)
        return path

    def figure_path(self, filename: str) -> Path:
        """Path for a figure in the run directory, listed in the manifest and archive like data files."""
        return self._target(filename)

    def write_csv(self, filename: str, columns: Sequence[str], rows: Iterable[Sequence[Any]],
                  **provenance: Any) -> Path:
        """Provenance comment line, header row, then numeric rows."""
        path = self._target(filename)
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(PROVENANCE_PREFIX + canonical_json(self.provenance(**provenance)) + "\n")
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(columns)
            for row in rows:
                writer.writerow([_format_cell(v) for v in row])
        logger.debug(f"[write_csv] {path}")
        return path

    def write_json(self, filename: str, payload: Dict[str, Any], **provenance: Any) -> Path:
        path = self._target(filename)
        document = {"provenance": self.provenance(**provenance), **payload}
        path.write_text(json.dumps(document, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        logger.debug(f"[write_json] {path}")
        return path

    def write_manifest(self, **extra: Any) -> Path:
        """manifest.json: full config, its hash, software versions and the files written so far."""
        files = [path.name for path in self.written]
        path = self._target("manifest.json")
        manifest = {
            "config": self.config,
            "provenance": self.provenance(),
            "software": {"qwalk": __version__, "numpy": np.__version__},
            "files": files,
            **extra,
        }
        path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        return path

    def create_export_zip(self) -> bytes:
        """
        Creates a zip archive in-memory holding every file written so far.

        Returns:
            bytes: The content of the zip file.
        """
        zip_buffer = io.BytesIO()
        with zipfile.ZipFile(zip_buffer, "w", zipfile.ZIP_DEFLATED) as zip_file:
            for path in self.written:
                info = zipfile.ZipInfo(path.name, date_time=_ZIP_DATE_TIME)
                info.compress_type = zipfile.ZIP_DEFLATED
                zip_file.writestr(info, path.read_bytes())
        zip_buffer.seek(0)
        return zip_buffer.read()

    def write_archive(self, filename: str = "run.zip") -> Path:
        payload = self.create_export_zip()
        path = self.out_dir / filename
        path.write_bytes(payload)
        logger.info(f"[write_archive] {len(self.written)} file(s) -> {path}")
        return path
