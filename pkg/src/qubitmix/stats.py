"""Averages over random qubits: quadrature engines and Monte Carlo estimators.

Quadrature goes through :func:`scipy.integrate.quad` (QUADPACK, 21-point
Gauss-Kronrod) or :func:`scipy.integrate.quad_vec` when another rule is
requested.  Any convergence warning becomes :class:`NumericalFailureError`.

Monte Carlo estimators split the sample budget over ``workers`` substreams
of the caller's sampler.  The estimate depends on ``(seed, stream,
samples, workers)`` only, never on thread scheduling.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable

import numpy as np
from scipy import integrate

from .bloch import coherence_bloch, entropy_phi, fidelity_squared_bloch
from .ensembles import SeededSampler, sample_hs_state, sample_radius_state
from .errors import ContractError, DegenerateParameterError, DomainError, NumericalFailureError
from .mixing import quantum_add_bloch

LN2 = math.log(2.0)
MC_CHUNK = 1 << 18


@dataclass(frozen=True)
class QuadratureConfig:
    epsabs: float = 1e-7
    epsrel: float = 1e-7
    limit: int = 200
    rule: str = "gk21"
    inner_epsabs: float = 1e-9

    def __post_init__(self):
        if self.epsabs <= 0 or self.epsrel <= 0 or self.inner_epsabs <= 0:
            raise DomainError("quadrature tolerances must be positive")
        if self.limit < 1:
            raise DomainError("limit must be at least 1")
        if self.rule not in ("gk21", "gk15"):
            raise DomainError(f"unknown quadrature rule {self.rule!r}")

    def inner(self) -> "QuadratureConfig":
        return QuadratureConfig(self.inner_epsabs, self.inner_epsabs, self.limit, self.rule, self.inner_epsabs)


DEFAULT_QUAD = QuadratureConfig()


@dataclass(frozen=True)
class McEstimate:
    value: float
    std_error: float
    n_samples: int
    seed: int

    def as_dict(self) -> dict:
        return asdict(self)

    def agrees_with(self, target: float, n_sigma: float = 3.0, extra_se: float = 0.0) -> bool:
        return abs(self.value - target) <= n_sigma * math.hypot(self.std_error, extra_se)


def quad(f: Callable[[float], float], a: float, b: float, cfg: QuadratureConfig = DEFAULT_QUAD,
         points=None) -> float:
    """Adaptive 1-D integral of ``f`` over ``[a, b]``; raises on non-convergence."""
    if b <= a:
        return 0.0
    if cfg.rule == "gk21":
        res = integrate.quad(f, a, b, epsabs=cfg.epsabs, epsrel=cfg.epsrel, limit=cfg.limit,
                             points=points, full_output=1)
        if len(res) > 3:
            raise NumericalFailureError(
                f"quad on [{a}, {b}] did not converge: {res[3]!s} (estimate={res[0]!r}, abserr={res[1]!r})"
            )
        return float(res[0])
    val, err, info = integrate.quad_vec(f, a, b, epsabs=cfg.epsabs, epsrel=cfg.epsrel, limit=cfg.limit,
                                        quadrature=cfg.rule, points=points, full_output=True)
    if not info.success:
        raise NumericalFailureError(f"quad_vec on [{a}, {b}] did not converge: {info.message} (abserr={err!r})")
    return float(val)


# --- conditional averages over fixed orbits -------------------------------------------


def _check_radii(r1: float, r2: float) -> tuple[float, float]:
    r1, r2 = float(r1), float(r2)
    for name, r in (("r1", r1), ("r2", r2)):
        if not 0.0 < r <= 1.0:
            raise DegenerateParameterError(f"{name} must lie in (0, 1], got {r}")
    return r1, r2


def phi_aux(x: float) -> float:
    """Antiderivative helper: ``6 ln2 * d/dx^-1 [Phi(x) x]`` up to a constant.

    ``x^2 (1 + 6 ln2) + (1 - x)^2 (1 + 2x) ln(1 - x) + (1 + x)^2 (1 - 2x) ln(1 + x)``,
    with the middle term taken as 0 at ``x = 1``.
    """
    x = float(x)
    left = 0.0 if x >= 1.0 else (1.0 - x) ** 2 * (1.0 + 2.0 * x) * math.log1p(-x)
    return x * x * (1.0 + 6.0 * LN2) + left + (1.0 + x) ** 2 * (1.0 - 2.0 * x) * math.log1p(x)


def cond_avg_entropy_equi(r1: float, r2: float) -> float:
    """Mean entropy (bits) of ``(a + b)/2`` for random orientations with ``|a| = r1``, ``|b| = r2``."""
    r1, r2 = _check_radii(r1, r2)
    rp, rm = (r1 + r2) / 2.0, abs(r1 - r2) / 2.0
    return (phi_aux(rp) - phi_aux(rm)) / (6.0 * LN2 * r1 * r2)


def cond_avg_entropy_qadd(r1: float, r2: float, cfg: QuadratureConfig = DEFAULT_QUAD) -> float:
    """Mean entropy (bits) of ``a [+]_{1/2} b`` for random orientations with ``|a| = r1``, ``|b| = r2``.

    Substituting ``v = sqrt(A - 4 rhat^2)`` (``A = (1 + r1^2)(1 + r2^2)``) turns
    the weight ``rhat / sqrt(A - 4 rhat^2)`` into a constant, leaving
    ``(1 / (2 r1 r2)) * int_{1 - r1 r2}^{1 + r1 r2} Phi(sqrt(A - v^2) / 2) dv``,
    which has no endpoint singularity even at ``r1 = r2 = 1``.
    """
    r1, r2 = _check_radii(r1, r2)
    p = r1 * r2
    big_a = (1.0 + r1 * r1) * (1.0 + r2 * r2)

    def f(v):
        return entropy_phi(min(1.0, 0.5 * math.sqrt(max(big_a - v * v, 0.0))))

    return quad(f, 1.0 - p, 1.0 + p, cfg) / (2.0 * p)


# --- Hilbert-Schmidt averages -------------------------------------------------------------
# Lengths are i.i.d. with density 3 r^2, so E = 9 int int r1^2 r2^2 c(r1, r2).  The
# integrand is symmetric; integrating over r2 < r1 and doubling avoids the |r1 - r2| kink.


def _hs_double_average(cond: Callable[[float, float], float], cfg: QuadratureConfig) -> float:
    inner_cfg = cfg.inner()

    def outer(r1):
        if r1 == 0.0:
            return 0.0
        return r1 * r1 * quad(lambda r2: r2 * r2 * cond(r1, r2) if r2 > 0.0 else 0.0, 0.0, r1, inner_cfg)

    return 18.0 * quad(outer, 0.0, 1.0, cfg)


def avg_entropy_hs_single(cfg: QuadratureConfig = DEFAULT_QUAD) -> float:
    """Mean entropy (bits) of one Hilbert-Schmidt qubit, ``int 3 r^2 Phi(r) dr``."""
    return quad(lambda r: 3.0 * r * r * entropy_phi(r), 0.0, 1.0, cfg.inner())


def avg_entropy_equi_hs(cfg: QuadratureConfig = DEFAULT_QUAD) -> float:
    """``E S((rho1 + rho2)/2)`` for i.i.d. Hilbert-Schmidt qubits (about 0.7631 bits)."""
    return _hs_double_average(cond_avg_entropy_equi, cfg)


def avg_entropy_qadd_hs(cfg: QuadratureConfig = DEFAULT_QUAD) -> float:
    """``E S(rho1 [+]_{1/2} rho2)`` for i.i.d. Hilbert-Schmidt qubits."""
    inner_cfg = cfg.inner()
    return _hs_double_average(lambda a, b: cond_avg_entropy_qadd(a, b, inner_cfg), cfg)


# --- Page's formula --------------------------------------------------------------------------


def harmonic(k: int) -> Fraction:
    return sum((Fraction(1, j) for j in range(1, k + 1)), Fraction(0))


def page_entropy_exact(m: int, n: int) -> Fraction:
    """``H_{mn} - H_n - (m - 1)/(2n)`` as an exact rational (nats)."""
    if not (isinstance(m, int) and isinstance(n, int)) or m < 1 or n < 1:
        raise DomainError("m and n must be positive integers")
    if m > n:
        raise DomainError(f"Page's formula needs m <= n, got m={m}, n={n}")
    return harmonic(m * n) - harmonic(n) - Fraction(m - 1, 2 * n)


def page_entropy(m: int, n: int, bits: bool = False) -> float:
    """Page's mean subsystem entropy; raw harmonic value (nats) unless ``bits``."""
    val = float(page_entropy_exact(m, n))
    return val / LN2 if bits else val


# --- squared fidelity --------------------------------------------------------------------------


def avg_fidelity_squared_exact() -> float:
    """``E F^2 = (1 + (3 pi / 16)^2) / 2`` for i.i.d. Hilbert-Schmidt qubits."""
    return 0.5 * (1.0 + (3.0 * math.pi / 16.0) ** 2)


def avg_fidelity_squared_quadrature(cfg: QuadratureConfig = DEFAULT_QUAD) -> float:
    """Triple integral of ``F^2(u, v, theta) * (9/2) u^2 v^2 sin(theta)``."""
    inner_cfg = cfg.inner()

    def f2(u, v, th):
        return 0.5 * (1.0 + u * v * math.cos(th) + math.sqrt(max((1.0 - u * u) * (1.0 - v * v), 0.0)))

    def over_theta(u, v):
        return quad(lambda th: f2(u, v, th) * 4.5 * math.sin(th), 0.0, math.pi, inner_cfg)

    def over_v(u):
        return quad(lambda v: v * v * over_theta(u, v), 0.0, 1.0, inner_cfg)

    return quad(lambda u: u * u * over_v(u), 0.0, 1.0, cfg)


# --- Kolmogorov-Smirnov ---------------------------------------------------------------------------


def ks_one_sample(samples, cdf: Callable) -> float:
    """Sup-distance between the empirical CDF of sorted ``samples`` and ``cdf``."""
    x = np.asarray(samples, dtype=float)
    if x.ndim != 1 or x.size == 0:
        raise ContractError("samples must be a non-empty 1-D sequence")
    if np.any(np.diff(x) < 0):
        raise ContractError("samples must be sorted ascending")
    n = x.size
    f = np.asarray(cdf(x), dtype=float)
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - f), np.max(f - (i - 1) / n)))


# --- Monte Carlo --------------------------------------------------------------------------------------


def mc_mean(statistic: Callable[[SeededSampler, int], np.ndarray], samples: int, sampler: SeededSampler,
            workers: int = 1, chunk: int = MC_CHUNK) -> McEstimate:
    """Mean and standard error of ``statistic`` over ``samples`` draws.

    ``statistic(s, k)`` must return ``k`` i.i.d. values drawn from sampler ``s``.
    Worker ``j`` draws its share from ``sampler.substream(j)`` in fixed-size chunks
    and the partial sums are combined in worker order.
    """
    if samples < 2:
        raise DomainError("need at least 2 samples")
    if workers < 1:
        raise DomainError("workers must be >= 1")
    workers = min(workers, samples)
    shares = [samples // workers + (1 if j < samples % workers else 0) for j in range(workers)]

    def run(j: int):
        s = sampler.substream(j)
        total = 0.0
        total_sq = 0.0
        left = shares[j]
        while left > 0:
            k = min(chunk, left)
            vals = np.asarray(statistic(s, k), dtype=float)
            total += math.fsum(vals)
            total_sq += math.fsum(vals * vals)
            left -= k
        return total, total_sq

    if workers == 1:
        parts = [run(0)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, range(workers)))
    total = math.fsum(p[0] for p in parts)
    total_sq = math.fsum(p[1] for p in parts)
    mean = total / samples
    var = max(total_sq / samples - mean * mean, 0.0) * samples / (samples - 1)
    return McEstimate(mean, math.sqrt(var / samples), samples, sampler.seed)


def _length(v: np.ndarray) -> np.ndarray:
    return np.minimum(np.linalg.norm(v, axis=-1), 1.0)


def mc_avg_entropy_equi_hs(samples: int, sampler: SeededSampler, workers: int = 1) -> McEstimate:
    def stat(s, k):
        a, b = sample_hs_state(s, k), sample_hs_state(s, k)
        return entropy_phi(_length(0.5 * (a + b)))

    return mc_mean(stat, samples, sampler, workers)


def mc_avg_entropy_qadd_hs(samples: int, sampler: SeededSampler, workers: int = 1) -> McEstimate:
    def stat(s, k):
        a, b = sample_hs_state(s, k), sample_hs_state(s, k)
        return entropy_phi(_length(quantum_add_bloch(a, b, 0.5)))

    return mc_mean(stat, samples, sampler, workers)


def mc_cond_avg_entropy(kind: str, r1: float, r2: float, samples: int, sampler: SeededSampler,
                        workers: int = 1) -> McEstimate:
    """Monte Carlo counterpart of ``cond_avg_entropy_{equi,qadd}``."""
    if kind not in ("equi", "qadd"):
        raise DomainError(f"kind must be 'equi' or 'qadd', got {kind!r}")

    def stat(s, k):
        a, b = sample_radius_state(r1, s, k), sample_radius_state(r2, s, k)
        v = 0.5 * (a + b) if kind == "equi" else quantum_add_bloch(a, b, 0.5)
        return entropy_phi(_length(v))

    return mc_mean(stat, samples, sampler, workers)


def mc_avg_fidelity_squared(samples: int, sampler: SeededSampler, workers: int = 1) -> McEstimate:
    def stat(s, k):
        return fidelity_squared_bloch(sample_hs_state(s, k), sample_hs_state(s, k))

    return mc_mean(stat, samples, sampler, workers)


def _mean_of_n(n: int, s: SeededSampler, k: int, draw) -> np.ndarray:
    acc = np.zeros((k, 3))
    for _ in range(n):
        acc += draw(s, k)
    return acc / n


def mc_avg_entropy_mean_n(n: int, samples: int, sampler: SeededSampler, workers: int = 1,
                          draw=sample_hs_state) -> McEstimate:
    """``E S((rho_1 + ... + rho_n)/n)`` in bits for i.i.d. draws (Hilbert-Schmidt by default)."""
    if n < 1:
        raise DomainError("n must be >= 1")
    return mc_mean(lambda s, k: entropy_phi(_length(_mean_of_n(n, s, k, draw))), samples, sampler, workers)


def mc_avg_coherence_n(n: int, samples: int, sampler: SeededSampler, workers: int = 1,
                       draw=sample_hs_state) -> McEstimate:
    """Mean relative entropy of coherence (computational basis) of the average of ``n`` draws."""
    if n < 1:
        raise DomainError("n must be >= 1")

    def stat(s, k):
        m = _mean_of_n(n, s, k, draw)
        r = np.linalg.norm(m, axis=-1, keepdims=True)
        m = np.where(r > 1.0, m / np.where(r > 1.0, r, 1.0), m)
        return coherence_bloch(m)

    return mc_mean(stat, samples, sampler, workers)
