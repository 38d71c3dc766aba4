import numpy as np
import pytest
from scipy import stats as sps

from qubitmix import densities
from qubitmix.ensembles import (
    SeededSampler,
    sample_angle,
    sample_direction,
    sample_hs_length,
    sample_hs_state,
    sample_orbit_state,
)
from qubitmix.errors import DomainError
from qubitmix.stats import ks_one_sample

import oracles

N = 1_000_000


def _within_4se(x, target):
    return abs(x.mean() - target) <= 4 * x.std(ddof=1) / np.sqrt(x.size)


class TestDirections:
    def test_unit_length(self, sampler):
        v = sample_direction(sampler, 10_000)
        assert np.max(np.abs(np.linalg.norm(v, axis=1) - 1)) < 1e-14
        assert np.linalg.norm(sample_direction(sampler)) == pytest.approx(1, abs=1e-14)

    def test_component_means(self):
        v = sample_direction(SeededSampler(11), N)
        for k in range(3):
            assert _within_4se(v[:, k], 0.0)

    def test_archimedes_projection(self):
        z = np.sort(sample_direction(SeededSampler(12), N)[:, 2])
        assert ks_one_sample(z, lambda x: (x + 1) / 2) < 0.002


class TestHilbertSchmidt:
    def test_length_mean_and_range(self):
        r = sample_hs_length(SeededSampler(13), N)
        assert np.all((r >= 0) & (r <= 1))
        assert _within_4se(r, 0.75)

    def test_length_cdf(self):
        r = np.sort(sample_hs_length(SeededSampler(14), N))
        assert ks_one_sample(r, lambda x: np.clip(x, 0, 1) ** 3) < 0.002

    def test_max_eigenvalue_law(self):
        v = sample_hs_state(SeededSampler(15), N)
        x = np.sort(0.5 * (1 + np.linalg.norm(v, axis=1)))
        assert ks_one_sample(x, densities.cdf_maxeig_hs) < 0.002

    def test_isotropic_mean(self):
        v = sample_hs_state(SeededSampler(16), N)
        for k in range(3):
            assert _within_4se(v[:, k], 0.0)
        assert np.all(np.linalg.norm(v, axis=1) <= 1.0)

    def test_matches_partial_trace_construction(self):
        # two-sample KS against reduced states of Haar-random two-qubit pure states
        ours = sample_hs_state(SeededSampler(17), 100_000)
        ref = oracles.hs_states_by_partial_trace(np.random.default_rng(17), 100_000)
        for f in (lambda v: np.linalg.norm(v, axis=1), lambda v: v[:, 0], lambda v: v[:, 2]):
            assert sps.ks_2samp(f(ours), f(ref)).statistic < 0.01


class TestOrbits:
    def test_maximally_mixed_orbit(self, sampler):
        assert np.all(sample_orbit_state(0.5, sampler, 100) == 0)

    def test_pure_orbit(self, sampler):
        r = np.linalg.norm(sample_orbit_state(0.0, sampler, 1000), axis=1)
        assert np.max(np.abs(r - 1)) < 1e-14

    def test_fixed_radius(self, sampler):
        r = np.linalg.norm(sample_orbit_state(1 / 6, sampler, 1000), axis=1)
        assert np.max(np.abs(r - 2 / 3)) < 1e-14

    def test_domain(self, sampler):
        with pytest.raises(DomainError):
            sample_orbit_state(0.6, sampler)
        with pytest.raises(DomainError):
            sample_orbit_state(-0.1, sampler)

    def test_haar_conjugation_cross_check(self):
        # U diag(1 - mu, mu) U^dag with Haar U must give the same law as our radius-sphere draws
        mu = 0.2
        rng = np.random.default_rng(99)
        d = np.diag([1 - mu, mu]).astype(complex)
        ref = np.array([oracles.bloch(u @ d @ u.conj().T) for u in (oracles.haar_su2(rng) for _ in range(20_000))])
        ours = sample_orbit_state(mu, SeededSampler(99), 20_000)
        np.testing.assert_allclose(np.linalg.norm(ref, axis=1), 1 - 2 * mu, atol=1e-12)
        for k in range(3):
            assert sps.ks_2samp(ours[:, k], ref[:, k]).statistic < 0.02


class TestAngles:
    def test_cosine_uniform(self):
        c = np.sort(np.cos(sample_angle(SeededSampler(18), N)))
        assert ks_one_sample(c, lambda x: (x + 1) / 2) < 0.002

    def test_range_and_mean(self):
        th = sample_angle(SeededSampler(19), N)
        assert np.all((th >= 0) & (th <= np.pi))
        assert _within_4se(th, np.pi / 2)

    def test_consistent_with_two_directions(self):
        s = SeededSampler(20)
        a, b = sample_direction(s, 100_000), sample_direction(s, 100_000)
        th = np.arccos(np.clip(np.sum(a * b, axis=1), -1, 1))
        assert sps.ks_2samp(th, sample_angle(SeededSampler(21), 100_000)).statistic < 0.005


class TestStreams:
    def test_reproducible(self):
        a = sample_hs_state(SeededSampler(5, 3), 1000)
        b = sample_hs_state(SeededSampler(5, 3), 1000)
        assert np.array_equal(a, b)

    def test_streams_differ(self):
        assert not np.array_equal(SeededSampler(5, 0).uniform(10), SeededSampler(5, 1).uniform(10))

    def test_substream_is_deterministic(self):
        assert np.array_equal(SeededSampler(5).substream(2).uniform(5), SeededSampler(5, (0, 2)).uniform(5))

    def test_substream_independence(self):
        x = SeededSampler(77, 0).uniform(100_000)
        y = SeededSampler(77, 1).uniform(100_000)
        assert abs(np.corrcoef(x, y)[0, 1]) < 0.01

    def test_bad_seed(self):
        with pytest.raises(DomainError):
            SeededSampler(-1)
        with pytest.raises(DomainError):
            SeededSampler(2**64)
