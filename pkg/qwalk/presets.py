# -*- coding: utf-8 -*-
"""
Figure presets.

Each preset is a JSON file in ``figure_presets/`` describing one published
figure: the experiment, its panels (one disorder setting per curve), the step
count and the fit window. Desk-scale ensemble sizes are the default.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from qwalk.config import DEFAULT_WINDOW, DESK_N_MAPS, FIGURE_PRESETS_DIR, FULL_N_MAPS
from qwalk.ensemble import DisorderSpec, InitialStateSpec
from qwalk.errors import ConfigError
from qwalk.hilbert import Symmetry

logger = logging.getLogger(__name__)


class FitWindow(BaseModel):
    model_config = ConfigDict(extra="forbid")

    t_min: int = Field(ge=1)
    t_max: int = Field(ge=1)

    @model_validator(mode="after")
    def _check_order(self):
        if self.t_min >= self.t_max:
            raise ValueError(f"t_min ({self.t_min}) must be below t_max ({self.t_max})")
        return self

    def as_tuple(self) -> Tuple[int, int]:
        return self.t_min, self.t_max


class Panel(BaseModel):
    """One curve (or one heatmap) of a figure."""
    model_config = ConfigDict(extra="forbid")

    label: str
    disorder: DisorderSpec = Field(default_factory=DisorderSpec)
    statistics: Optional[Symmetry] = None


class FigurePreset(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str
    description: str = ""
    experiment: Literal["qfi", "variance", "distribution", "two-particle"]
    plot: Literal["loglog", "alpha", "heatmap"] = "loglog"
    steps: int = Field(ge=1)
    n_maps: int = Field(DESK_N_MAPS, ge=1)
    full_n_maps: int = Field(FULL_N_MAPS, ge=1)
    master_seed: int = Field(0, ge=0)
    initial: InitialStateSpec = Field(default_factory=InitialStateSpec)
    fit: Optional[FitWindow] = None
    window: int = DEFAULT_WINDOW
    panels: List[Panel] = Field(min_length=1)

    @model_validator(mode="after")
    def _check_panels(self):
        if self.fit is not None and self.fit.t_max > self.steps:
            raise ValueError(f"fit window ends at {self.fit.t_max}, beyond the {self.steps} simulated steps")
        if self.experiment == "two-particle" and any(panel.statistics is None for panel in self.panels):
            raise ValueError("two-particle panels must name their statistics")
        return self

    def ensemble_size(self, full_scale: bool = False) -> int:
        return self.full_n_maps if full_scale else self.n_maps


def available_presets(presets_dir: Path = FIGURE_PRESETS_DIR) -> List[str]:
    return sorted(path.stem for path in Path(presets_dir).glob("*.json"))


def load_figure_preset(name: str, presets_dir: Path = FIGURE_PRESETS_DIR) -> FigurePreset:
    """
    Load a figure preset by name.

    Args:
        name: preset name, e.g. ``fig2a``
        presets_dir: directory holding the preset JSON files

    Raises:
        ConfigError: unknown preset name
    """
    path = Path(presets_dir) / f"{name}.json"
    if not path.is_file():
        known = ", ".join(available_presets(presets_dir))
        raise ConfigError("name", f"unknown figure '{name}' (available: {known})")

    with open(path, "r", encoding="utf-8") as f:
        payload = json.load(f)
    preset = FigurePreset.model_validate(payload)
    logger.debug(f"[load_figure_preset] Loaded {name} from {path}")
    return preset
