# -*- coding: utf-8 -*-
"""
Coin, shift and phase-shift unitaries and the composed step

    U(phi) = S (I_p (x) C) P

with P applied first inside every step. The phi-derivative follows the
product rule  d psi_t = dU psi_{t-1} + U d psi_{t-1},  where dU = S C dP and
dP multiplies only the up-coin amplitudes by  i exp(i(phi + dphi'(t, x))).

Kernels act on arrays whose two leading axes are (position, coin); any
trailing axes are carried along untouched, which is how the second particle
rides through single-particle operators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np

from qwalk.config import DEFAULT_PHI
from qwalk.disorder import PhaseMap
from qwalk.errors import DisorderError, LatticeBoundaryError
from qwalk.hilbert import DOWN, UP, DerivativePair, TwoParticleState, WalkerState

_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class StepContext:
    """Everything step ``step_index`` needs: the estimated phase and the disorder realization."""
    phi: float
    step_index: int
    phase_map: PhaseMap
    # caption reading: apply P after S C instead of before
    phase_last: bool = False

    def __post_init__(self):
        if not 1 <= self.step_index <= self.phase_map.steps:
            raise DisorderError(
                f"step_index {self.step_index} outside phase map range 1..{self.phase_map.steps}"
            )

    def phase_factors(self, t_max: int) -> np.ndarray:
        """exp(i(phi + dphi'(t, x))) for every site of a lattice of capacity t_max."""
        flags = self.phase_map.phase_row(self.step_index, t_max)
        # pi fluctuations flip the sign exactly instead of going through exp(i*pi)
        return np.exp(1j * self.phi) * np.where(flags == 1, -1.0, 1.0)


def contexts(phase_map: PhaseMap, phi: float = DEFAULT_PHI, steps: int | None = None,
             phase_last: bool = False):
    """StepContext for t = 1..steps (defaults to the whole map)."""
    steps = phase_map.steps if steps is None else steps
    for t in range(1, steps + 1):
        yield StepContext(phi, t, phase_map, phase_last)


# ---------------------------------------------------------------------------
# array kernels
# ---------------------------------------------------------------------------

def _broadcast(factors: np.ndarray, ndim: int) -> np.ndarray:
    return factors.reshape(factors.shape + (1,) * (ndim - 2))


def _coin(a: np.ndarray) -> np.ndarray:
    out = np.empty_like(a)
    out[:, UP] = (a[:, UP] + a[:, DOWN]) / _SQRT2
    out[:, DOWN] = (a[:, UP] - a[:, DOWN]) / _SQRT2
    return out


def _shift(a: np.ndarray) -> np.ndarray:
    if np.any(a[0] != 0) or np.any(a[-1] != 0):
        t_max = (a.shape[0] - 1) // 2
        raise LatticeBoundaryError(
            f"walker support reached |x| = {t_max}; increase t_max beyond the number of steps"
        )
    out = np.zeros_like(a)
    out[1:, UP] = a[:-1, UP]
    out[:-1, DOWN] = a[1:, DOWN]
    return out


def _phase(a: np.ndarray, factors: np.ndarray) -> np.ndarray:
    out = a.copy()
    out[:, UP] *= _broadcast(factors, a.ndim)
    return out


def _phase_derivative(phased: np.ndarray) -> np.ndarray:
    """dP psi given P psi: i times the up amplitudes, down amplitudes dropped."""
    out = np.zeros_like(phased)
    out[:, UP] = 1j * phased[:, UP]
    return out


def _step_kernel(a: np.ndarray, factors: np.ndarray, phase_last: bool) -> np.ndarray:
    if phase_last:
        return _phase(_shift(_coin(a)), factors)
    return _shift(_coin(_phase(a, factors)))


def _step_derivative_kernel(a: np.ndarray, da: np.ndarray, factors: np.ndarray,
                            phase_last: bool) -> Tuple[np.ndarray, np.ndarray]:
    if phase_last:
        phased = _phase(_shift(_coin(a)), factors)
        return phased, _phase_derivative(phased) + _phase(_shift(_coin(da)), factors)
    phased = _phase(a, factors)
    evolved = _shift(_coin(phased))
    return evolved, _shift(_coin(_phase_derivative(phased) + _phase(da, factors)))


def _swap_particles(a: np.ndarray) -> np.ndarray:
    return a.transpose(2, 3, 0, 1)


def _on_second_particle(a: np.ndarray, kernel: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    return np.ascontiguousarray(_swap_particles(kernel(_swap_particles(a))))


# ---------------------------------------------------------------------------
# single particle
# ---------------------------------------------------------------------------

def apply_coin(state: WalkerState) -> WalkerState:
    """(a_up, a_down) -> ((a_up + a_down)/sqrt2, (a_up - a_down)/sqrt2) at every site."""
    return state.with_amplitudes(_coin(state.amplitudes))


def apply_shift(state: WalkerState) -> WalkerState:
    """Up amplitudes move to x+1, down amplitudes to x-1."""
    return state.with_amplitudes(_shift(state.amplitudes))


def apply_phase(state: WalkerState, ctx: StepContext) -> WalkerState:
    """Multiply up amplitudes by exp(i(phi + dphi'(t, x))); down amplitudes unchanged."""
    return state.with_amplitudes(_phase(state.amplitudes, ctx.phase_factors(state.t_max)))


def step(state: WalkerState, ctx: StepContext) -> WalkerState:
    return state.with_amplitudes(
        _step_kernel(state.amplitudes, ctx.phase_factors(state.t_max), ctx.phase_last)
    )


def step_with_derivative(pair: DerivativePair, ctx: StepContext) -> DerivativePair:
    """(psi_{t-1}, d psi_{t-1}) -> (psi_t, d psi_t). The psi part equals `step` bit for bit."""
    psi, dpsi = pair.psi, pair.dpsi
    evolved, derivative = _step_derivative_kernel(
        psi.amplitudes, dpsi.amplitudes, ctx.phase_factors(psi.t_max), ctx.phase_last
    )
    return DerivativePair(psi.with_amplitudes(evolved), dpsi.with_amplitudes(derivative))


# ---------------------------------------------------------------------------
# two particles: U (x) U with one shared phase map
# ---------------------------------------------------------------------------

def two_particle_step(state: TwoParticleState, ctx: StepContext) -> TwoParticleState:
    factors = ctx.phase_factors(state.t_max)

    def kernel(a):
        return _step_kernel(a, factors, ctx.phase_last)

    first = kernel(state.amplitudes)
    return state.with_amplitudes(_on_second_particle(first, kernel))


def two_particle_step_with_derivative(pair: DerivativePair, ctx: StepContext) -> DerivativePair:
    """
    d(U (x) U) = dU (x) U + U (x) dU, realised as two single-particle derivative
    steps: the first particle's pass yields (U1 psi, dU1 psi + U1 dpsi), the
    second pass then adds dU2 U1 psi.
    """
    psi, dpsi = pair.psi, pair.dpsi
    factors = ctx.phase_factors(psi.t_max)

    a, da = _step_derivative_kernel(psi.amplitudes, dpsi.amplitudes, factors, ctx.phase_last)
    b, db = _step_derivative_kernel(_swap_particles(a), _swap_particles(da), factors, ctx.phase_last)
    evolved = np.ascontiguousarray(_swap_particles(b))
    derivative = np.ascontiguousarray(_swap_particles(db))
    return DerivativePair(psi.with_amplitudes(evolved), dpsi.with_amplitudes(derivative))
