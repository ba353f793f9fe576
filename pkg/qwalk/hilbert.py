# -*- coding: utf-8 -*-
"""
Walker states on a bounded 1-D lattice.

A lattice of capacity ``t_max`` spans positions ``-t_max..+t_max``. Single
walker amplitudes are stored as a ``(2*t_max + 1, 2)`` complex array indexed by
``(x + t_max, coin)``; the coin index varies fastest (``UP = 0``, ``DOWN = 1``).
Two-particle amplitudes are a dense ``(L, 2, L, 2)`` array over
``(x1, c1, x2, c2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence, Union

import numpy as np

from qwalk.config import NORM_TOLERANCE
from qwalk.errors import LatticeBoundaryError, NormalizationError


UP = 0
DOWN = 1


class Symmetry(str, Enum):
    """Exchange symmetry tag of a two-particle state."""
    SEPARABLE = "separable"
    BOSON = "boson"
    FERMION = "fermion"

    @property
    def sign(self) -> int:
        return -1 if self is Symmetry.FERMION else 1


def lattice_size(t_max: int) -> int:
    return 2 * t_max + 1


@dataclass(frozen=True, eq=False)
class WalkerState:
    """One walker: complex amplitudes over (position, coin)."""
    t_max: int
    amplitudes: np.ndarray

    def __post_init__(self):
        expected = (lattice_size(self.t_max), 2)
        if self.amplitudes.shape != expected:
            raise ValueError(f"amplitudes must have shape {expected}, got {self.amplitudes.shape}")

    @property
    def positions(self) -> np.ndarray:
        return np.arange(-self.t_max, self.t_max + 1)

    def index(self, x: int) -> int:
        if abs(x) > self.t_max:
            raise LatticeBoundaryError(f"position {x} outside lattice [-{self.t_max}, {self.t_max}]")
        return x + self.t_max

    def amplitude(self, x: int, coin: int) -> complex:
        return complex(self.amplitudes[self.index(x), coin])

    def norm_squared(self) -> float:
        return braket(self.amplitudes, self.amplitudes).real

    def support_radius(self) -> int:
        """Largest |x| carrying a nonzero amplitude (-1 for the zero vector)."""
        occupied = np.flatnonzero(np.any(self.amplitudes != 0, axis=1))
        if occupied.size == 0:
            return -1
        return int(np.max(np.abs(occupied - self.t_max)))

    def with_amplitudes(self, amplitudes: np.ndarray) -> "WalkerState":
        return WalkerState(self.t_max, amplitudes)

    def zeros_like(self) -> "WalkerState":
        return WalkerState(self.t_max, np.zeros_like(self.amplitudes))


@dataclass(frozen=True, eq=False)
class TwoParticleState:
    """Two walkers on the same lattice, stored dense over (x1, c1, x2, c2)."""
    t_max: int
    amplitudes: np.ndarray
    symmetry: Symmetry = Symmetry.SEPARABLE

    def __post_init__(self):
        size = lattice_size(self.t_max)
        expected = (size, 2, size, 2)
        if self.amplitudes.shape != expected:
            raise ValueError(f"amplitudes must have shape {expected}, got {self.amplitudes.shape}")

    @property
    def positions(self) -> np.ndarray:
        return np.arange(-self.t_max, self.t_max + 1)

    def amplitude(self, x1: int, c1: int, x2: int, c2: int) -> complex:
        for x in (x1, x2):
            if abs(x) > self.t_max:
                raise LatticeBoundaryError(f"position {x} outside lattice [-{self.t_max}, {self.t_max}]")
        return complex(self.amplitudes[x1 + self.t_max, c1, x2 + self.t_max, c2])

    def norm_squared(self) -> float:
        return braket(self.amplitudes, self.amplitudes).real

    def exchanged(self) -> np.ndarray:
        """Amplitudes with the particle labels swapped."""
        return self.amplitudes.transpose(2, 3, 0, 1)

    def exchange_residual(self, sign: int | None = None) -> float:
        """max |a(x1,c1,x2,c2) - sign * a(x2,c2,x1,c1)|; sign defaults to the tag's."""
        if sign is None:
            if self.symmetry is Symmetry.SEPARABLE:
                raise ValueError("separable states carry no exchange symmetry; pass sign explicitly")
            sign = self.symmetry.sign
        return float(np.max(np.abs(self.amplitudes - sign * self.exchanged())))

    def with_amplitudes(self, amplitudes: np.ndarray) -> "TwoParticleState":
        return TwoParticleState(self.t_max, amplitudes, self.symmetry)

    def zeros_like(self) -> "TwoParticleState":
        return TwoParticleState(self.t_max, np.zeros_like(self.amplitudes), self.symmetry)


LatticeState = Union[WalkerState, TwoParticleState]


def new_single_state(position: int, coin_amplitudes: Sequence[complex], t_max: int) -> WalkerState:
    """Localized walker at ``position`` with coin vector ``(a_up, a_down)``."""
    if t_max < 1:
        raise ValueError(f"t_max must be >= 1, got {t_max}")
    if abs(position) > t_max:
        raise LatticeBoundaryError(f"position {position} outside lattice [-{t_max}, {t_max}]")
    coin = np.asarray(coin_amplitudes, dtype=np.complex128)
    if coin.shape != (2,):
        raise ValueError("coin_amplitudes must hold exactly two amplitudes (up, down)")
    coin_norm = float(np.vdot(coin, coin).real)
    if abs(coin_norm - 1.0) >= NORM_TOLERANCE:
        raise NormalizationError(f"coin vector has squared norm {coin_norm!r}, expected 1")

    amplitudes = np.zeros((lattice_size(t_max), 2), dtype=np.complex128)
    amplitudes[position + t_max] = coin
    return WalkerState(t_max, amplitudes)


def inner_product(a: LatticeState, b: LatticeState) -> complex:
    """<a|b> = sum conj(a) * b over every basis index."""
    if type(a) is not type(b):
        raise TypeError(f"cannot take inner product of {type(a).__name__} and {type(b).__name__}")
    if a.t_max != b.t_max:
        raise LatticeBoundaryError(f"lattice capacities differ: {a.t_max} vs {b.t_max}")
    return braket(a.amplitudes, b.amplitudes)


def new_two_particle_state(kind: Symmetry | str, t_max: int) -> TwoParticleState:
    """
    Two walkers at the origin with opposite coins.

    separable -> |0,up> (x) |0,down>
    boson     -> (|0,up;0,down> + |0,down;0,up>) / sqrt(2)
    fermion   -> (|0,up;0,down> - |0,down;0,up>) / sqrt(2)
    """
    kind = Symmetry(kind)
    if t_max < 1:
        raise ValueError(f"t_max must be >= 1, got {t_max}")
    size = lattice_size(t_max)
    origin = t_max
    amplitudes = np.zeros((size, 2, size, 2), dtype=np.complex128)
    if kind is Symmetry.SEPARABLE:
        amplitudes[origin, UP, origin, DOWN] = 1.0
    else:
        amplitudes[origin, UP, origin, DOWN] = 1.0 / math.sqrt(2.0)
        amplitudes[origin, DOWN, origin, UP] = kind.sign / math.sqrt(2.0)
    return TwoParticleState(t_max, amplitudes, kind)


def product_state(first: WalkerState, second: WalkerState) -> TwoParticleState:
    """Separable two-particle state first (x) second."""
    if first.t_max != second.t_max:
        raise LatticeBoundaryError(f"lattice capacities differ: {first.t_max} vs {second.t_max}")
    amplitudes = np.einsum("ij,kl->ijkl", first.amplitudes, second.amplitudes)
    return TwoParticleState(first.t_max, amplitudes, Symmetry.SEPARABLE)


@dataclass(frozen=True, eq=False)
class DerivativePair:
    """
    Co-evolved pair (psi_t, d psi_t / d phi).

    ``dpsi`` is unnormalized; it is the zero vector at t = 0.
    """
    psi: LatticeState
    dpsi: LatticeState

    def __post_init__(self):
        if type(self.psi) is not type(self.dpsi) or self.psi.amplitudes.shape != self.dpsi.amplitudes.shape:
            raise ValueError("psi and dpsi must be states of the same kind and shape")

    @classmethod
    def start(cls, initial: LatticeState) -> "DerivativePair":
        return cls(initial, initial.zeros_like())


def braket(a: np.ndarray, b: np.ndarray) -> complex:
    """sum conj(a) * b with numpy's pairwise summation (no BLAS, so independent of thread count)."""
    return complex(np.sum(np.conj(a) * b))
