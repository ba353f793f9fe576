# -*- coding: utf-8 -*-
"""
Coherent phase disorder.

A phase map assigns every (step t, site x) cell a fluctuation in {0, pi}. It is
stored as a read-only uint8 table of shape ``(T, 2T + 1)`` where 1 stands for pi.
Static maps repeat a single row for every step; dynamic maps draw each cell
independently.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from qwalk.errors import DisorderError

logger = logging.getLogger(__name__)


class DisorderKind(str, Enum):
    NONE = "none"
    STATIC = "static"
    DYNAMIC = "dynamic"


class DisorderSemantics(str, Enum):
    # each cell (or static column) is randomized with probability p, then takes 0 or pi uniformly
    BERNOULLI_UNIFORM = "bernoulli-uniform"
    # exactly floor(p * N) cells set to pi, chosen without replacement
    EXACT_PI_FRACTION = "exact-pi-fraction"


@dataclass(frozen=True, eq=False)
class PhaseMap:
    """One disorder realization."""
    kind: DisorderKind
    p: float
    semantics: DisorderSemantics
    seed: Optional[int]
    entries: np.ndarray

    def __post_init__(self):
        if self.entries.ndim != 2 or self.entries.shape[1] != 2 * self.entries.shape[0] + 1:
            raise DisorderError(f"phase map table must have shape (T, 2T+1), got {self.entries.shape}")

    @property
    def steps(self) -> int:
        return self.entries.shape[0]

    def phase_row(self, t: int, t_max: int | None = None) -> np.ndarray:
        """
        Row of pi flags seen at step ``t`` (1-based), laid out on a lattice of
        capacity ``t_max`` (defaults to the map's own width). Sites outside the
        map carry no fluctuation.
        """
        if not 1 <= t <= self.steps:
            raise DisorderError(f"step {t} outside phase map range 1..{self.steps}")
        row = self.entries[t - 1]
        if t_max is None or t_max == self.steps:
            return row
        if t_max < self.steps:
            offset = self.steps - t_max
            return row[offset:offset + 2 * t_max + 1]
        return np.pad(row, t_max - self.steps)

    def is_frozen(self) -> bool:
        return bool(np.all(self.entries == self.entries[0]))

    def to_record(self) -> "PhaseMapRecord":
        return PhaseMapRecord(
            kind=self.kind,
            p=self.p,
            T=self.steps,
            semantics=self.semantics,
            seed=self.seed,
            entries=self.entries.astype(int).tolist(),
        )

    def to_json(self) -> str:
        return self.to_record().model_dump_json()

    @classmethod
    def from_json(cls, payload: str) -> "PhaseMap":
        return PhaseMapRecord.model_validate_json(payload).to_phase_map()

    def save(self, path: Path) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")

    @classmethod
    def load(cls, path: Path) -> "PhaseMap":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))


class PhaseMapRecord(BaseModel):
    """Exchange format for exact experiment replay. ``entries`` is row-major, 1 = pi."""
    model_config = ConfigDict(extra="forbid")

    kind: DisorderKind
    p: float = Field(ge=0.0, le=1.0)
    T: int = Field(ge=1)
    semantics: DisorderSemantics = DisorderSemantics.BERNOULLI_UNIFORM
    seed: Optional[int] = None
    entries: List[List[int]]

    @model_validator(mode="after")
    def _check_layout(self):
        if len(self.entries) != self.T or any(len(row) != 2 * self.T + 1 for row in self.entries):
            raise ValueError(f"entries must be a {self.T} x {2 * self.T + 1} table")
        if any(v not in (0, 1) for row in self.entries for v in row):
            raise ValueError("entries may only contain 0 or 1")
        if self.kind is DisorderKind.NONE and any(any(row) for row in self.entries):
            raise ValueError("a 'none' map must be all zeros")
        if self.kind is DisorderKind.STATIC and any(row != self.entries[0] for row in self.entries):
            raise ValueError("a static map must repeat the same row at every step")
        return self

    def to_phase_map(self) -> PhaseMap:
        entries = np.asarray(self.entries, dtype=np.uint8)
        entries.setflags(write=False)
        return PhaseMap(self.kind, self.p, self.semantics, self.seed, entries)


def _validate_degree(p: float) -> None:
    if not (0.0 <= p <= 1.0):
        raise DisorderError(f"p must lie in [0, 1], got {p!r}")


def pi_cell_count(p: float, n_cells: int) -> int:
    """floor(p * n_cells) with p read as the decimal it was written as (0.57 * 300 = 171, not 170)."""
    return math.floor(Fraction(p).limit_denominator(10 ** 9) * n_cells)


def generate_map(
    kind: DisorderKind | str,
    steps: int,
    p: float,
    semantics: DisorderSemantics | str = DisorderSemantics.BERNOULLI_UNIFORM,
    seed: Optional[int] = None,
) -> PhaseMap:
    """
    Draw one phase map for ``steps`` steps at disorder degree ``p``.

    The same (kind, steps, p, semantics, seed) always yields the same table.
    Static maps sample one row over the full range -steps..steps and repeat it.
    """
    kind = DisorderKind(kind)
    semantics = DisorderSemantics(semantics)
    _validate_degree(p)
    if steps < 1:
        raise DisorderError(f"steps must be >= 1, got {steps}")
    if seed is None:
        seed = int(np.random.SeedSequence().entropy)

    width = 2 * steps + 1
    if kind is DisorderKind.NONE:
        entries = np.zeros((steps, width), dtype=np.uint8)
    else:
        rows = 1 if kind is DisorderKind.STATIC else steps
        rng = np.random.default_rng(seed)
        if semantics is DisorderSemantics.BERNOULLI_UNIFORM:
            randomized = rng.random((rows, width)) < p
            values = rng.integers(0, 2, size=(rows, width), dtype=np.uint8)
            table = np.where(randomized, values, 0).astype(np.uint8)
        else:
            n_cells = rows * width
            flat = np.zeros(n_cells, dtype=np.uint8)
            flat[rng.choice(n_cells, size=pi_cell_count(p, n_cells), replace=False)] = 1
            table = flat.reshape(rows, width)
        entries = np.repeat(table, steps, axis=0) if kind is DisorderKind.STATIC else table

    entries.setflags(write=False)
    return PhaseMap(kind, float(p), semantics, int(seed), entries)


def ordered_map(steps: int) -> PhaseMap:
    """Disorder-free map (p = 0)."""
    return generate_map(DisorderKind.NONE, steps, 0.0, seed=0)


def disorder_fraction(phase_map: PhaseMap) -> float:
    """Fraction of cells carrying a pi fluctuation."""
    return float(np.mean(phase_map.entries))


def load_phase_maps(path: Path) -> List[PhaseMap]:
    """Read a JSON file holding either one map record or a list of them."""
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    records = payload if isinstance(payload, list) else [payload]
    maps = [PhaseMapRecord.model_validate(record).to_phase_map() for record in records]
    logger.debug(f"[load_phase_maps] Loaded {len(maps)} phase map(s) from {path}")
    return maps
