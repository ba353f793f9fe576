# -*- coding: utf-8 -*-
"""Static SVG figures, rendered in-process with matplotlib's Agg/SVG backends."""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Tuple

import matplotlib

matplotlib.use("Agg")

import numpy as np
from matplotlib.figure import Figure

from qwalk.analysis import AlphaSeries, PowerLawFit
from qwalk.exporter import canonical_json

logger = logging.getLogger(__name__)

# stable element ids and no timestamp, so reruns give identical files
_SVG_RC = {"svg.hashsalt": "qwalk", "svg.fonttype": "none"}
_SVG_METADATA = {"Date": None}

Provenance = Optional[Mapping[str, Any]]

Curve = Tuple[np.ndarray, np.ndarray]


def _save(fig: Figure, path: Path, provenance: Provenance = None) -> Path:
    """Write ``fig`` as SVG; ``provenance`` goes into the dc:description metadata as JSON."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    metadata = dict(_SVG_METADATA)
    if provenance is not None:
        metadata["Description"] = canonical_json(dict(provenance))
    with matplotlib.rc_context(_SVG_RC):
        fig.savefig(path, format="svg", metadata=metadata, bbox_inches="tight")
    logger.debug(f"[_save] {path}")
    return path


def plot_power_law(path: Path, curves: Mapping[str, Curve], ylabel: str, title: str,
                   fits: Optional[Dict[str, PowerLawFit]] = None, provenance: Provenance = None) -> Path:
    """Log-log curves, each with its fitted t^alpha line and exponent in the legend."""
    fig = Figure(figsize=(6.4, 4.8))
    ax = fig.add_subplot()
    fits = fits or {}
    for label, (t, values) in curves.items():
        t, values = np.asarray(t, dtype=float), np.asarray(values, dtype=float)
        keep = (t > 0) & (values > 0)
        line, = ax.loglog(t[keep], values[keep], "o", markersize=3, label=label)
        fit = fits.get(label)
        if fit is not None:
            t_fit = np.linspace(fit.t_range[0], fit.t_range[1], 50)
            ax.loglog(t_fit, fit.amplitude * t_fit ** fit.alpha, "-", color=line.get_color(),
                      label=f"fit α = {fit.alpha:.2f} ({fit.regime.value})")
    ax.set_xlabel("step t")
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    ax.legend(fontsize="small")
    ax.grid(True, which="both", linestyle="--", alpha=0.5)
    return _save(fig, path, provenance)


def plot_alpha(path: Path, series: Mapping[str, AlphaSeries], title: str,
               provenance: Provenance = None) -> Path:
    fig = Figure(figsize=(6.4, 4.8))
    ax = fig.add_subplot()
    for label, alpha in series.items():
        ax.plot(alpha.centers, alpha.alpha, "o-", markersize=3, label=f"{label} (w = {alpha.window})")
    for reference, style in ((2.0, ":"), (1.0, "--"), (0.0, "-.")):
        ax.axhline(reference, color="grey", linestyle=style, linewidth=0.8)
    ax.set_xlabel("window center t")
    ax.set_ylabel("α(t)")
    ax.set_title(title)
    ax.legend(fontsize="small")
    return _save(fig, path, provenance)


def plot_distribution(path: Path, panels: Mapping[str, Tuple[np.ndarray, np.ndarray]], title: str,
                      provenance: Provenance = None) -> Path:
    """
    Heatmaps of averaged p(x) with the step number increasing downwards.

    ``panels`` maps a label to ``(positions, distribution)``, the distribution
    shaped ``(T + 1, len(positions))``.
    """
    fig = Figure(figsize=(3.2 * len(panels), 4.0))
    axes = fig.subplots(1, len(panels), squeeze=False)[0]
    for ax, (label, (positions, distribution)) in zip(axes, panels.items()):
        steps = distribution.shape[0] - 1
        image = ax.imshow(
            distribution,
            aspect="auto",
            origin="upper",
            cmap="viridis",
            interpolation="nearest",
            extent=(positions[0] - 0.5, positions[-1] + 0.5, steps + 0.5, -0.5),
        )
        ax.set_title(label, fontsize="small")
        ax.set_xlabel("position x")
        fig.colorbar(image, ax=ax, fraction=0.05)
    axes[0].set_ylabel("step t")
    fig.suptitle(title)
    return _save(fig, path, provenance)
