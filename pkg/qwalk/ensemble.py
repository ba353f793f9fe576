# -*- coding: utf-8 -*-
"""
Monte-Carlo ensembles over disorder realizations.

Member k draws its phase map from ``split(master_seed, k)``. Members are grouped
into fixed-size chunks that run as joblib tasks; chunk results come back in
submission order and are reduced in member order, so the output does not
depend on the worker count.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Literal, Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from tqdm import tqdm

from qwalk.config import (
    DEFAULT_PHI,
    DEFAULT_WORKERS,
    ENSEMBLE_CHUNK_SIZE,
    FULL_N_MAPS,
    NORM_TOLERANCE,
)
from qwalk.disorder import DisorderKind, DisorderSemantics, generate_map
from qwalk.errors import EnsembleMemberError
from qwalk.hilbert import LatticeState, Symmetry, new_single_state, new_two_particle_state
from qwalk.metrology import evolve, qfi_pure
from qwalk.observables import PositionDistribution, position_distribution, position_variance

logger = logging.getLogger(__name__)

Observable = Literal["qfi", "variance", "distribution"]

_MASK64 = (1 << 64) - 1
_GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def split(master_seed: int, k: int) -> int:
    """
    Child seed of ensemble member ``k``.

    Counter-based (splitmix64 finalizer over master + (k+1) * gamma mod 2^64):
    stateless, and injective in k for k < 2^64 because gamma is odd and the
    finalizer is a bijection of 64-bit words.
    """
    if k < 0:
        raise ValueError(f"member index must be >= 0, got {k}")
    z = (master_seed + (k + 1) * _GOLDEN_GAMMA) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


# ============================================================================
# Configuration models
# ============================================================================

class DisorderSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: DisorderKind = DisorderKind.NONE
    p: float = Field(0.0, ge=0.0, le=1.0)
    semantics: DisorderSemantics = DisorderSemantics.BERNOULLI_UNIFORM

    @property
    def is_ordered(self) -> bool:
        """True when every realization is the ordered walk (no pi cells under either semantics)."""
        return self.kind is DisorderKind.NONE or self.p == 0.0


def _as_pair(value: Any) -> Tuple[float, float]:
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return float(value[0]), float(value[1])
    number = complex(value)
    return number.real, number.imag


class InitialStateSpec(BaseModel):
    """
    Walker input. ``coin`` holds (up, down) amplitudes, each a number or an
    ``[re, im]`` pair. Two-particle inputs ignore position and coin and use the
    origin with opposite coins.
    """
    model_config = ConfigDict(extra="forbid")

    particles: Literal["single", "two"] = "single"
    position: int = 0
    coin: Tuple[Tuple[float, float], Tuple[float, float]] = ((1.0, 0.0), (0.0, 0.0))
    statistics: Symmetry = Symmetry.SEPARABLE

    @field_validator("coin", mode="before")
    @classmethod
    def _parse_coin(cls, value):
        if not isinstance(value, (list, tuple)) or len(value) != 2:
            raise ValueError("coin must list exactly two amplitudes (up, down)")
        return tuple(_as_pair(v) for v in value)

    @model_validator(mode="after")
    def _check_coin_norm(self):
        norm = sum(re * re + im * im for re, im in self.coin)
        if abs(norm - 1.0) >= NORM_TOLERANCE:
            raise ValueError(f"coin vector must be normalized, squared norm is {norm!r}")
        return self

    @property
    def coin_amplitudes(self) -> Tuple[complex, complex]:
        return tuple(complex(re, im) for re, im in self.coin)

    def build(self, steps: int) -> LatticeState:
        if self.particles == "two":
            return new_two_particle_state(self.statistics, steps)
        return new_single_state(self.position, self.coin_amplitudes, steps + abs(self.position))


class EnsembleConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    disorder: DisorderSpec = Field(default_factory=DisorderSpec)
    steps: int = Field(ge=1)
    n_maps: int = Field(FULL_N_MAPS, ge=1)
    master_seed: int = Field(0, ge=0)
    phi: float = DEFAULT_PHI
    initial: InitialStateSpec = Field(default_factory=InitialStateSpec)
    observables: List[Observable] = Field(default_factory=lambda: ["qfi"], min_length=1)
    # average per-map variances instead of taking the variance of the averaged distribution
    per_map_variance: bool = False
    phase_last: bool = False

    @property
    def needs_distribution(self) -> bool:
        return "distribution" in self.observables or (
            "variance" in self.observables and not self.per_map_variance
        )

    @property
    def needs_member_variance(self) -> bool:
        return "variance" in self.observables and self.per_map_variance


# ============================================================================
# Results
# ============================================================================

@dataclass(eq=False)
class EnsembleSeries:
    """Per-step ensemble averages with the seeds that produced them."""
    config: EnsembleConfig
    member_seeds: List[int]
    qfi_mean: Optional[np.ndarray] = None
    qfi_stderr: Optional[np.ndarray] = None
    variance: Optional[np.ndarray] = None
    variance_stderr: Optional[np.ndarray] = None
    distribution: Optional[np.ndarray] = None
    elapsed_seconds: float = field(default=0.0, compare=False)

    @property
    def t(self) -> np.ndarray:
        return np.arange(self.config.steps + 1)

    @property
    def positions(self) -> np.ndarray:
        width = self.distribution.shape[1]
        return np.arange(width) - (width - 1) // 2

    def provenance(self) -> Dict[str, Any]:
        return {
            "config": self.config.model_dump(mode="json"),
            "master_seed": self.config.master_seed,
            "semantics": self.config.disorder.semantics.value,
            "member_seeds": [str(s) for s in self.member_seeds],
        }

    def to_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {"t": self.t.tolist()}
        for name in ("qfi_mean", "qfi_stderr", "variance", "variance_stderr"):
            values = getattr(self, name)
            if values is not None:
                payload[name] = values.tolist()
        if self.distribution is not None:
            payload["positions"] = self.positions.tolist()
            payload["distribution"] = self.distribution.tolist()
        return payload


@dataclass
class _ChunkResult:
    qfi: Optional[np.ndarray]
    variance: Optional[np.ndarray]
    distribution_sum: Optional[np.ndarray]


def _run_member(config: EnsembleConfig, seed: int) -> Dict[str, np.ndarray]:
    spec = config.disorder
    phase_map = generate_map(spec.kind, config.steps, spec.p, spec.semantics, seed)
    initial = config.initial.build(config.steps)
    want_qfi = "qfi" in config.observables
    want_dist = config.needs_distribution or config.needs_member_variance

    qfi, dists = [], []
    for _, current in evolve(initial, phase_map, config.phi, config.steps,
                             with_derivative=want_qfi, phase_last=config.phase_last):
        state = current.psi if want_qfi else current
        if want_qfi:
            qfi.append(qfi_pure(current))
        if want_dist:
            dists.append(position_distribution(state).probabilities)

    result = {}
    if want_qfi:
        result["qfi"] = np.asarray(qfi)
    if want_dist:
        result["distribution"] = np.stack(dists)
    return result


def _run_chunk(config: EnsembleConfig, start: int, seeds: Sequence[int]) -> _ChunkResult:
    qfi_rows, variance_rows = [], []
    distribution_sum = None
    for offset, seed in enumerate(seeds):
        try:
            member = _run_member(config, seed)
        except Exception as exc:
            raise EnsembleMemberError(start + offset, seed, exc) from exc
        if "qfi" in member:
            qfi_rows.append(member["qfi"])
        if "distribution" in member:
            dist = member["distribution"]
            if config.needs_member_variance:
                variance_rows.append([position_variance(PositionDistribution(row)) for row in dist])
            if config.needs_distribution:
                distribution_sum = dist.copy() if distribution_sum is None else distribution_sum + dist
    return _ChunkResult(
        qfi=np.stack(qfi_rows) if qfi_rows else None,
        variance=np.asarray(variance_rows) if variance_rows else None,
        distribution_sum=distribution_sum,
    )


def _mean_and_stderr(rows: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    mean = rows.mean(axis=0)
    if rows.shape[0] < 2:
        return mean, np.zeros_like(mean)
    return mean, rows.std(axis=0, ddof=1) / math.sqrt(rows.shape[0])


def _chunks(seeds: List[int], size: int) -> Iterable[Tuple[int, List[int]]]:
    for start in range(0, len(seeds), size):
        yield start, seeds[start:start + size]


def run_ensemble(config: EnsembleConfig, workers: Optional[int] = None,
                 progress: bool = False) -> EnsembleSeries:
    """
    Average the requested observables over ``config.n_maps`` disorder realizations.

    A failing member aborts the run with an `EnsembleMemberError` naming its seed.
    """
    workers = DEFAULT_WORKERS if workers is None else workers
    seeds = [split(config.master_seed, k) for k in range(config.n_maps)]
    # identical members: the single run is the ensemble, with zero spread
    evolved = seeds[:1] if config.disorder.is_ordered else seeds
    chunks = list(_chunks(evolved, ENSEMBLE_CHUNK_SIZE))
    logger.info(
        f"[run_ensemble] {config.disorder.kind.value} p={config.disorder.p} "
        f"T={config.steps} maps={config.n_maps} chunks={len(chunks)} workers={workers}"
    )
    started = time.perf_counter()

    parallel = Parallel(n_jobs=workers, return_as="generator")
    results = parallel(delayed(_run_chunk)(config, start, chunk) for start, chunk in chunks)
    qfi_blocks, variance_blocks = [], []
    distribution_total = None
    for result in tqdm(results, total=len(chunks), desc="ensemble", disable=not progress):
        if result.qfi is not None:
            qfi_blocks.append(result.qfi)
        if result.variance is not None:
            variance_blocks.append(result.variance)
        if result.distribution_sum is not None:
            distribution_total = (
                result.distribution_sum if distribution_total is None
                else distribution_total + result.distribution_sum
            )

    series = EnsembleSeries(config=config, member_seeds=seeds)
    if qfi_blocks:
        series.qfi_mean, series.qfi_stderr = _mean_and_stderr(np.concatenate(qfi_blocks))
    if distribution_total is not None:
        averaged = distribution_total / len(evolved)
        if "distribution" in config.observables:
            series.distribution = averaged
        if "variance" in config.observables and not config.per_map_variance:
            series.variance = np.array([position_variance(PositionDistribution(row)) for row in averaged])
    if variance_blocks:
        series.variance, series.variance_stderr = _mean_and_stderr(np.concatenate(variance_blocks))

    series.elapsed_seconds = time.perf_counter() - started
    logger.info(f"[run_ensemble] finished in {series.elapsed_seconds:.2f}s")
    return series


def sweep_disorder(config: EnsembleConfig, p_values: Sequence[float],
                   workers: Optional[int] = None, progress: bool = False) -> Dict[float, EnsembleSeries]:
    """Same ensemble at several disorder degrees (seeds are shared across p)."""
    sweep = {}
    for p in p_values:
        disorder = DisorderSpec(kind=config.disorder.kind, p=p, semantics=config.disorder.semantics)
        sweep[float(p)] = run_ensemble(config.model_copy(update={"disorder": disorder}), workers, progress)
    return sweep
