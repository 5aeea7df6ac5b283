"""Offer-wave amplitudes, Born weights, actualization and unitary evolution.

An offer wave is a complex amplitude vector over a finite absorber basis.
Projecting it yields a mixed state whose weights are the squared moduli of
the amplitudes; sampling one index actualizes a single transaction. Time
evolution applies exp(-iHt) for a Hermitian generator H (hbar = 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable

import numpy as np

from .errors import DimensionMismatch, NotHermitian, NotNormalized

NORM_TOLERANCE = 1e-6  # silent renormalization band for offers
WEIGHT_TOLERANCE = 1e-9
HERMITIAN_TOLERANCE = 1e-12


class OfferWave:
    """Complex amplitudes a_i over an absorber basis, with an emitter tag."""

    __slots__ = ("amplitudes", "emitter_tag")

    def __init__(self, amplitudes, emitter_tag: Hashable = None):
        amps = np.atleast_1d(np.asarray(amplitudes, dtype=complex))
        if amps.ndim != 1 or amps.size == 0:
            raise DimensionMismatch("amplitudes must form a non-empty vector")
        self.amplitudes = amps
        self.emitter_tag = emitter_tag

    def __len__(self) -> int:
        return len(self.amplitudes)

    @property
    def squared_norm(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def __repr__(self) -> str:
        return f"OfferWave(n={len(self)}, emitter_tag={self.emitter_tag!r})"


class WeightDistribution:
    """Non-negative weights over the same index space as an offer wave."""

    __slots__ = ("weights",)

    def __init__(self, weights):
        w = np.atleast_1d(np.asarray(weights, dtype=float))
        if w.ndim != 1 or w.size == 0:
            raise DimensionMismatch("weights must form a non-empty vector")
        if np.any(w < 0):
            raise NotNormalized("weights must be non-negative")
        total = float(w.sum())
        if abs(total - 1.0) > NORM_TOLERANCE:
            raise NotNormalized(f"weights sum to {total}, expected 1")
        self.weights = w / total

    def __len__(self) -> int:
        return len(self.weights)


class HermitianGenerator:
    """An n x n Hermitian matrix used as an evolution generator."""

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        m = np.asarray(matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
        if not np.all(np.abs(m - m.conj().T) <= HERMITIAN_TOLERANCE):
            raise NotHermitian("matrix differs from its conjugate transpose")
        self.matrix = m

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class ElevationParams:
    """Coupling constant and transition probability, both in [0, 1]."""

    coupling: float
    transition_probability: float

    def __post_init__(self):
        for name in ("coupling", "transition_probability"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")


def elevation_probability(params: ElevationParams) -> float:
    """Probability that a virtual exchange is elevated to a real offer."""
    return params.coupling * params.transition_probability


def born_weights(offer: OfferWave) -> WeightDistribution:
    """Weights w_i = |a_i|^2 / sum|a_j|^2.

    Offers within NORM_TOLERANCE of unit norm are renormalized silently;
    anything farther off raises NotNormalized.
    """
    probs = np.abs(offer.amplitudes) ** 2
    total = float(probs.sum())
    if abs(total - 1.0) > NORM_TOLERANCE:
        raise NotNormalized(f"offer squared norm {total} deviates from 1")
    return WeightDistribution(probs / total)


def project_to_mixed(offer: OfferWave) -> list[tuple[int, float]]:
    """Mixed-state decomposition as (projector index, Born weight) pairs.

    Zero-weight entries are retained: they are incipient transactions of
    weight zero, not absent ones.
    """
    w = born_weights(offer)
    return list(enumerate(w.weights.tolist()))


def actualize(dist: WeightDistribution, rng: np.random.Generator) -> int:
    """Sample one index by inverse CDF over the stored index order."""
    cum = np.cumsum(dist.weights)
    u = rng.random()
    idx = int(np.searchsorted(cum, u, side="right"))
    return min(idx, len(dist) - 1)


def evolve(offer: OfferWave, h: HermitianGenerator, t: float) -> OfferWave:
    """Apply exp(-iHt) to the offer via eigendecomposition of H.

    Hermitian H diagonalizes unitarily, so the norm is preserved up to
    floating error.
    """
    if h.dimension != len(offer):
        raise DimensionMismatch(
            f"generator dimension {h.dimension} != offer dimension {len(offer)}"
        )
    evals, evecs = np.linalg.eigh(h.matrix)
    phases = np.exp(-1j * evals * t)
    rotated = evecs @ (phases * (evecs.conj().T @ offer.amplitudes))
    return OfferWave(rotated, emitter_tag=offer.emitter_tag)
