# -*- coding: utf-8 -*-
"""Position distributions and position variance of walker states."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from qwalk.config import INPUT_NORM_TOLERANCE
from qwalk.errors import NormalizationError
from qwalk.hilbert import LatticeState, TwoParticleState


@dataclass(frozen=True, eq=False)
class PositionDistribution:
    """p(x) over x = -t_max..t_max."""
    probabilities: np.ndarray

    def __post_init__(self):
        if self.probabilities.ndim != 1 or self.probabilities.size % 2 != 1:
            raise ValueError("probabilities must be a 1-D array over an odd number of sites")

    @property
    def t_max(self) -> int:
        return (self.probabilities.size - 1) // 2

    @property
    def positions(self) -> np.ndarray:
        return np.arange(-self.t_max, self.t_max + 1)

    def as_dict(self, cutoff: float = 0.0) -> dict[int, float]:
        """{x: p(x)} for sites with p(x) > cutoff."""
        return {int(x): float(p) for x, p in zip(self.positions, self.probabilities) if p > cutoff}


def position_distribution(state: LatticeState, particle: int = 1) -> PositionDistribution:
    """
    p(x) = sum_c |psi(x, c)|^2.

    Two-particle states give the marginal of ``particle`` (1 or 2); for boson and
    fermion inputs both marginals coincide.
    """
    weights = np.abs(state.amplitudes) ** 2
    if isinstance(state, TwoParticleState):
        if particle not in (1, 2):
            raise ValueError(f"particle must be 1 or 2, got {particle}")
        keep = 0 if particle == 1 else 2
        drop = tuple(axis for axis in range(4) if axis != keep)
        probabilities = weights.sum(axis=drop)
    else:
        probabilities = weights.sum(axis=1)

    total = float(probabilities.sum())
    if abs(total - 1.0) > INPUT_NORM_TOLERANCE:
        raise NormalizationError(f"state is not normalized: total probability {total!r}")
    return PositionDistribution(probabilities)


def mean_position(dist: PositionDistribution) -> float:
    return float(np.sum(dist.positions * dist.probabilities))


def position_variance(dist: PositionDistribution) -> float:
    """sigma^2(X) = <X^2> - <X>^2, floored at zero against round-off."""
    x = dist.positions.astype(float)
    mean = float(np.sum(x * dist.probabilities))
    second = float(np.sum(x * x * dist.probabilities))
    return max(second - mean * mean, 0.0)
