"""Seeded samplers for random qubit states.

All draws use inverse-CDF transforms of uniforms, so a given
``(seed, stream)`` pair and draw order reproduce the same numbers
bit-for-bit:

* direction on the sphere: ``cos(theta) = 2U - 1``, azimuth ``2 pi U``;
* Hilbert-Schmidt Bloch length (density ``3 r^2``): ``r = U ** (1/3)``;
* orbit with minimal eigenvalue ``mu``: fixed length ``1 - 2 mu``;
* angle between two random directions (density ``sin(theta)/2``): ``arccos(2U - 1)``.

A sampler owns a :class:`numpy.random.Generator` and must not be shared
between threads while drawing.  Use :meth:`SeededSampler.substream` to
hand each worker its own independent stream.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError


@dataclass
class SeededSampler:
    """A reproducible random stream identified by ``(seed, stream)``.

    ``stream`` is an int or a tuple of ints; substreams append to the tuple.
    The pair is hashed into independent PCG64 state by ``numpy.random.SeedSequence``.
    """

    seed: int
    stream: int | tuple[int, ...] = 0
    _rng: np.random.Generator = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.seed < 0 or self.seed >= 2**64:
            raise DomainError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        key = self.stream if isinstance(self.stream, tuple) else (self.stream,)
        if any(k < 0 for k in key):
            raise DomainError(f"stream ids must be non-negative, got {self.stream}")
        ss = np.random.SeedSequence(entropy=int(self.seed), spawn_key=tuple(int(k) for k in key))
        self._rng = np.random.Generator(np.random.PCG64(ss))

    @property
    def key(self) -> tuple[int, ...]:
        return self.stream if isinstance(self.stream, tuple) else (self.stream,)

    def substream(self, k: int) -> "SeededSampler":
        """Independent child stream ``k`` of this sampler."""
        return SeededSampler(self.seed, self.key + (int(k),))

    def uniform(self, size=None):
        return self._rng.random(size)


def _directions_from_uniforms(u_cos: np.ndarray, u_az: np.ndarray) -> np.ndarray:
    z = 2.0 * u_cos - 1.0
    rho = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    az = 2.0 * np.pi * u_az
    return np.stack([rho * np.cos(az), rho * np.sin(az), z], axis=-1)


def sample_direction(s: SeededSampler, size=None) -> np.ndarray:
    """Unit vector(s) uniform on the sphere, shape ``(*size, 3)``."""
    u_cos = s.uniform(size)
    u_az = s.uniform(size)
    v = _directions_from_uniforms(np.asarray(u_cos), np.asarray(u_az))
    # renormalise so |v| = 1 to machine precision
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def sample_hs_length(s: SeededSampler, size=None):
    """Bloch length(s) of Hilbert-Schmidt random qubits, density ``3 r^2`` on [0, 1]."""
    return np.cbrt(s.uniform(size))


def sample_hs_state(s: SeededSampler, size=None) -> np.ndarray:
    """Hilbert-Schmidt random Bloch vector(s): length ``~3r^2`` times an isotropic direction."""
    r = np.asarray(sample_hs_length(s, size))
    return r[..., None] * sample_direction(s, size)


def orbit_radius(mu: float) -> float:
    """Bloch length ``1 - 2 mu`` shared by all states with minimal eigenvalue ``mu``."""
    mu = float(mu)
    if not 0.0 <= mu <= 0.5:
        raise DomainError(f"minimal eigenvalue mu must lie in [0, 1/2], got {mu}")
    return 1.0 - 2.0 * mu


def sample_orbit_state(mu: float, s: SeededSampler, size=None) -> np.ndarray:
    """Uniform draw(s) from the unitary orbit of ``diag(1 - mu, mu)``."""
    return orbit_radius(mu) * sample_direction(s, size)


def sample_radius_state(r: float, s: SeededSampler, size=None) -> np.ndarray:
    """Same as :func:`sample_orbit_state` but parametrised by the Bloch length."""
    r = float(r)
    if not 0.0 <= r <= 1.0:
        raise DomainError(f"Bloch length must lie in [0, 1], got {r}")
    return r * sample_direction(s, size)


def sample_angle(s: SeededSampler, size=None):
    """Angle(s) in ``[0, pi]`` with density ``sin(theta) / 2``."""
    return np.arccos(np.clip(2.0 * s.uniform(size) - 1.0, -1.0, 1.0))
