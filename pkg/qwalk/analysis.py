# -*- coding: utf-8 -*-
"""
Power-law analysis of QFI and variance series.

Fits are least-squares lines in log-log space; zero entries (such as F(0) and
F(1), up to round-off) are dropped rather than offset.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.stats import linregress

from qwalk.config import (
    ALPHA_NOISE_BAND,
    DEFAULT_WINDOW,
    FIT_ZERO_FLOOR,
    LOCALIZATION_THRESHOLD,
    MIN_FIT_POINTS,
    MIN_WINDOW,
    REGIME_TOLERANCE,
)
from qwalk.errors import FitError

logger = logging.getLogger(__name__)


class SpreadingRegime(str, Enum):
    BALLISTIC = "ballistic"
    SUPERDIFFUSIVE = "superdiffusive"
    DIFFUSIVE = "diffusive"
    SUBDIFFUSIVE = "subdiffusive"
    LOCALIZED = "localized"


@dataclass(frozen=True)
class PowerLawFit:
    """series ~ amplitude * t ** alpha over t_range."""
    alpha: float
    amplitude: float
    t_range: Tuple[int, int]
    residual: float
    alpha_stderr: float
    n_points: int

    @property
    def regime(self) -> "SpreadingRegime":
        return classify_regime(self.alpha)


@dataclass(frozen=True, eq=False)
class AlphaSeries:
    """Step-dependent exponent alpha(t) from sliding windows of width ``window``."""
    centers: np.ndarray
    alpha: np.ndarray
    window: int


def _as_series(series, t) -> Tuple[np.ndarray, np.ndarray]:
    values = np.asarray(series, dtype=float)
    steps = np.arange(values.size) if t is None else np.asarray(t, dtype=float)
    if steps.shape != values.shape:
        raise FitError("t and series must have the same length")
    return steps, values


def fit_power_law(series: Sequence[float], t_range: Optional[Tuple[int, int]] = None,
                  t: Optional[Sequence[float]] = None) -> PowerLawFit:
    """
    Fit log F = alpha log t + log A on ``t_range`` (inclusive).

    ``series`` is indexed by step unless explicit ``t`` values are given.
    """
    steps, values = _as_series(series, t)
    if t_range is None:
        t_range = (int(steps[0]), int(steps[-1]))
    t_min, t_max = t_range
    if t_min > t_max or t_min < steps[0] or t_max > steps[-1]:
        raise FitError(f"fit window {t_range} lies outside the series range [{steps[0]:g}, {steps[-1]:g}]")

    in_window = (steps >= t_min) & (steps <= t_max) & (steps > 0) & (np.abs(values) > FIT_ZERO_FLOOR)
    if np.any(values[in_window] < 0):
        raise FitError(f"series has negative values inside {t_range}")
    if np.count_nonzero(in_window) < MIN_FIT_POINTS:
        raise FitError(f"fewer than {MIN_FIT_POINTS} usable points inside {t_range}")

    log_t = np.log(steps[in_window])
    log_f = np.log(values[in_window])
    fit = linregress(log_t, log_f)
    residuals = log_f - (fit.slope * log_t + fit.intercept)
    return PowerLawFit(
        alpha=float(fit.slope),
        amplitude=float(np.exp(fit.intercept)),
        t_range=(int(t_min), int(t_max)),
        residual=float(np.sqrt(np.mean(residuals ** 2))),
        alpha_stderr=float(fit.stderr),
        n_points=int(log_t.size),
    )


def windowed_alpha(series: Sequence[float], window: int = DEFAULT_WINDOW,
                   t: Optional[Sequence[float]] = None) -> AlphaSeries:
    """
    alpha(t) = slope of the fit on [t - window/2, t + window/2] for every center
    whose window fits inside the series. Windows without enough usable points
    yield NaN.
    """
    steps, values = _as_series(series, t)
    if window < MIN_WINDOW:
        raise FitError(f"window must be >= {MIN_WINDOW}, got {window}")
    if values.size <= window:
        raise FitError(f"window {window} is too wide for a series of {values.size} points")

    half = window // 2
    centers, alphas = [], []
    for index in range(half, values.size - half):
        lo, hi = index - half, index + half
        try:
            fit = fit_power_law(values[lo:hi + 1], (steps[lo], steps[hi]), steps[lo:hi + 1])
            alpha = fit.alpha
        except FitError:
            alpha = float("nan")
        centers.append(steps[index])
        alphas.append(alpha)
    return AlphaSeries(np.asarray(centers), np.asarray(alphas), window)


def classify_regime(alpha: float, tolerance: float = REGIME_TOLERANCE) -> SpreadingRegime:
    """Map a spreading exponent onto ballistic / superdiffusive / diffusive / subdiffusive / localized."""
    if alpha >= 2.0 - tolerance:
        return SpreadingRegime.BALLISTIC
    if alpha > 1.0 + tolerance:
        return SpreadingRegime.SUPERDIFFUSIVE
    if alpha >= 1.0 - tolerance:
        return SpreadingRegime.DIFFUSIVE
    if alpha > tolerance:
        return SpreadingRegime.SUBDIFFUSIVE
    return SpreadingRegime.LOCALIZED


@dataclass(frozen=True)
class LocalizationReport:
    localized: bool
    non_increasing: bool
    final_alpha: float
    max_rise: float
    step_rise: float
    trend_rise: float
    tail_start: int


def detect_localization(alpha_series: AlphaSeries, tail_start: int = 30,
                        band: float = ALPHA_NOISE_BAND,
                        threshold: float = LOCALIZATION_THRESHOLD) -> LocalizationReport:
    """
    Anderson-localization signature on the tail of alpha(t) beyond ``tail_start``.

    The tail counts as non-increasing when no step between neighbouring windows
    rises by more than ``band`` and the least-squares trend across the whole
    tail rises by at most ``band``. Localized additionally needs the last
    window below ``threshold``.
    """
    keep = (alpha_series.centers >= tail_start) & np.isfinite(alpha_series.alpha)
    centers = alpha_series.centers[keep]
    tail = alpha_series.alpha[keep]
    if tail.size == 0:
        raise FitError(f"no finite alpha values beyond t = {tail_start}")

    step_rise, trend_rise = 0.0, 0.0
    if tail.size > 1:
        step_rise = max(0.0, float(np.max(np.diff(tail))))
    if tail.size > 2:
        trend = linregress(centers, tail)
        trend_rise = max(0.0, float(trend.slope * (centers[-1] - centers[0])))
    max_rise = max(step_rise, trend_rise)
    non_increasing = max_rise <= band
    final_alpha = float(tail[-1])
    report = LocalizationReport(
        localized=non_increasing and final_alpha < threshold,
        non_increasing=non_increasing,
        final_alpha=final_alpha,
        max_rise=max_rise,
        step_rise=step_rise,
        trend_rise=trend_rise,
        tail_start=tail_start,
    )
    logger.debug(f"[detect_localization] {report}")
    return report
