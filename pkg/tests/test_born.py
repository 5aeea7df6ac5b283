"""Tests for Born weights, actualization and unitary evolution."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats as scipy_stats

from causetsim import (
    ElevationParams,
    HermitianGenerator,
    OfferWave,
    WeightDistribution,
    actualize,
    born_weights,
    elevation_probability,
    evolve,
    project_to_mixed,
)
from causetsim.errors import DimensionMismatch, NotHermitian, NotNormalized


def random_offer(rng: np.random.Generator, n: int) -> OfferWave:
    amps = rng.normal(size=n) + 1j * rng.normal(size=n)
    return OfferWave(amps / np.linalg.norm(amps))


def random_hermitian(rng: np.random.Generator, n: int) -> HermitianGenerator:
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return HermitianGenerator((m + m.conj().T) / 2)


def rk4_schrodinger(h: np.ndarray, amplitudes: np.ndarray, t: float,
                    dt: float = 1e-4) -> np.ndarray:
    """Independent oracle: integrate i da/dt = H a with fixed-step RK4."""

    def deriv(a):
        return -1j * (h @ a)

    a = amplitudes.astype(complex)
    steps = int(round(t / dt))
    for _ in range(steps):
        k1 = deriv(a)
        k2 = deriv(a + 0.5 * dt * k1)
        k3 = deriv(a + 0.5 * dt * k2)
        k4 = deriv(a + dt * k3)
        a = a + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
    remainder = t - steps * dt
    if remainder:
        k1 = deriv(a)
        k2 = deriv(a + 0.5 * remainder * k1)
        k3 = deriv(a + 0.5 * remainder * k2)
        k4 = deriv(a + remainder * k3)
        a = a + remainder / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
    return a


class TestBornWeights:
    def test_eigenstate(self):
        w = born_weights(OfferWave([1.0, 0.0]))
        assert np.allclose(w.weights, [1.0, 0.0])

    def test_equal_superposition(self):
        w = born_weights(OfferWave([1 / math.sqrt(2), 1 / math.sqrt(2)]))
        assert np.allclose(w.weights, [0.5, 0.5])

    def test_complex_amplitudes(self):
        w = born_weights(OfferWave([0.6, 0.8j]))
        assert np.allclose(w.weights, [0.36, 0.64], atol=1e-15)

    def test_rejects_unnormalized_offers(self):
        with pytest.raises(NotNormalized):
            born_weights(OfferWave([1.0, 1.0]))

    def test_silent_renormalization_inside_band(self):
        amps = np.array([1.0, 0.0]) * math.sqrt(1 + 5e-7)
        w = born_weights(OfferWave(amps))
        assert w.weights.sum() == pytest.approx(1.0, abs=1e-12)

    def test_weights_normalized_and_nonnegative(self):
        rng = np.random.default_rng(31)
        for _ in range(200):
            w = born_weights(random_offer(rng, int(rng.integers(1, 65))))
            assert abs(w.weights.sum() - 1.0) < 1e-9
            assert np.all(w.weights >= 0)

    @given(st.floats(min_value=-math.pi, max_value=math.pi))
    @settings(max_examples=60, deadline=None)
    def test_global_phase_invariance(self, theta):
        rng = np.random.default_rng(17)
        offer = random_offer(rng, 8)
        rotated = OfferWave(offer.amplitudes * np.exp(1j * theta))
        base = born_weights(offer).weights
        assert np.max(np.abs(born_weights(rotated).weights - base)) < 1e-12


class TestProjectToMixed:
    def test_eigenstate_retains_zero_weight_entry(self):
        assert project_to_mixed(OfferWave([1.0, 0.0])) == [(0, 1.0), (1, 0.0)]

    def test_equal_three_way(self):
        mixture = project_to_mixed(OfferWave(np.ones(3) / math.sqrt(3)))
        assert [i for i, _ in mixture] == [0, 1, 2]
        assert all(w == pytest.approx(1 / 3) for _, w in mixture)

    def test_agrees_with_born_weights(self):
        rng = np.random.default_rng(32)
        for _ in range(50):
            offer = random_offer(rng, int(rng.integers(1, 32)))
            mixture = dict(project_to_mixed(offer))
            weights = born_weights(offer).weights
            assert all(mixture[i] == weights[i] for i in range(len(offer)))


class TestActualize:
    def test_certain_outcome(self):
        rng = np.random.default_rng(0)
        dist = WeightDistribution([1.0, 0.0])
        assert all(actualize(dist, rng) == 0 for _ in range(100))

    def test_fair_coin_frequency(self):
        rng = np.random.default_rng(41)
        dist = WeightDistribution([0.5, 0.5])
        draws = 100_000
        zeros = sum(actualize(dist, rng) == 0 for _ in range(draws))
        assert 0.494 <= zeros / draws <= 0.506  # 3 sigma band

    def test_chi_square_goodness_of_fit(self):
        rng = np.random.default_rng(42)
        weights = [0.36, 0.64]
        dist = WeightDistribution(weights)
        draws = 20_000
        counts = np.bincount([actualize(dist, rng) for _ in range(draws)], minlength=2)
        expected = np.array(weights) * draws
        _, p = scipy_stats.chisquare(counts, expected)
        assert p > 1e-3

    def test_deterministic_under_seed(self):
        dist = WeightDistribution([0.2, 0.3, 0.5])
        a = [actualize(dist, np.random.default_rng(9)) for _ in range(20)]
        b = [actualize(dist, np.random.default_rng(9)) for _ in range(20)]
        assert a == b

    def test_distribution_validation(self):
        with pytest.raises(NotNormalized):
            WeightDistribution([0.5, 0.2])
        with pytest.raises(NotNormalized):
            WeightDistribution([1.5, -0.5])


class TestEvolve:
    def test_zero_generator_is_identity(self):
        offer = OfferWave([0.6, 0.8])
        evolved = evolve(offer, HermitianGenerator(np.zeros((2, 2))), t=3.7)
        assert np.allclose(evolved.amplitudes, offer.amplitudes, atol=1e-12)

    def test_diagonal_generator_only_adds_phases(self):
        offer = OfferWave([0.6, 0.8])
        h = HermitianGenerator(np.diag([1.0, 2.5]))
        t = 0.9
        evolved = evolve(offer, h, t)
        expected = offer.amplitudes * np.exp(-1j * np.array([1.0, 2.5]) * t)
        assert np.allclose(evolved.amplitudes, expected, atol=1e-12)
        assert np.allclose(
            born_weights(evolved).weights, born_weights(offer).weights, atol=1e-12
        )

    def test_rabi_swap_matches_rk4_oracle(self):
        h = np.array([[0.0, 1.0], [1.0, 0.0]])
        offer = OfferWave([1.0, 0.0])
        t = math.pi / 2
        evolved = evolve(offer, HermitianGenerator(h), t)
        populations = np.abs(evolved.amplitudes) ** 2
        assert populations == pytest.approx([0.0, 1.0], abs=1e-12)
        oracle = rk4_schrodinger(h, offer.amplitudes, t)
        assert np.max(np.abs(evolved.amplitudes - oracle)) < 1e-6

    def test_unitarity(self):
        rng = np.random.default_rng(55)
        for _ in range(100):
            n = int(rng.integers(2, 17))
            offer = random_offer(rng, n)
            h = random_hermitian(rng, n)
            t = float(rng.uniform(-100, 100))
            evolved = evolve(offer, h, t)
            assert abs(evolved.squared_norm - 1.0) < 1e-10

    def test_composition(self):
        rng = np.random.default_rng(56)
        for _ in range(50):
            n = int(rng.integers(2, 9))
            offer = random_offer(rng, n)
            h = random_hermitian(rng, n)
            t1, t2 = rng.uniform(-5, 5, size=2)
            two_steps = evolve(evolve(offer, h, t1), h, t2)
            one_step = evolve(offer, h, t1 + t2)
            assert np.max(np.abs(two_steps.amplitudes - one_step.amplitudes)) < 1e-9

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            evolve(OfferWave([1.0, 0.0]), HermitianGenerator(np.zeros((3, 3))), 1.0)

    def test_not_hermitian(self):
        with pytest.raises(NotHermitian):
            HermitianGenerator(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_non_square_rejected(self):
        with pytest.raises(DimensionMismatch):
            HermitianGenerator(np.zeros((2, 3)))


class TestElevationProbability:
    def test_fine_structure_scale(self):
        alpha = 1 / 137.035999
        assert elevation_probability(
            ElevationParams(alpha, 1.0)
        ) == pytest.approx(0.0072973525, abs=1e-9)

    def test_zero_transition_probability(self):
        assert elevation_probability(ElevationParams(1 / 137.035999, 0.0)) == 0.0

    def test_product(self):
        assert elevation_probability(ElevationParams(0.5, 0.5)) == 0.25

    def test_bounds_enforced(self):
        with pytest.raises(ValueError):
            ElevationParams(1.2, 0.5)
        with pytest.raises(ValueError):
            ElevationParams(0.5, -0.1)
