"""Quantum Jensen-Shannon divergence, its partial-swap lower bound, and triangle tests.

``J(a, b) = S((rho_a + rho_b)/2) - (S(rho_a) + S(rho_b))/2`` and
``Jhat(a, b) = S(rho_a [+]_{1/2} rho_b) - (S(rho_a) + S(rho_b))/2``.
Both depend only on the two lengths and the angle between the Bloch
vectors.  ``sqrt(Jhat)`` fails the triangle inequality; the search below
finds such triples.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import permutations

import numpy as np

from .bloch import as_bloch, entropy_phi
from .ensembles import SeededSampler, sample_direction, sample_hs_state
from .errors import DomainError

MODES = ("pure", "mixed")
# apex vertex for each of the three ways to write the triangle inequality
_APEXES = ((0, 1, 2), (1, 0, 2), (2, 0, 1))


def _lengths(v):
    return np.minimum(np.linalg.norm(v, axis=-1), 1.0)


def qjsd(a, b):
    """Quantum Jensen-Shannon divergence in bits."""
    a = as_bloch(a)
    b = as_bloch(b)
    mid = entropy_phi(_lengths(0.5 * (a + b)))
    out = np.maximum(mid - 0.5 * (entropy_phi(_lengths(a)) + entropy_phi(_lengths(b))), 0.0)
    return out if np.ndim(out) else float(out)


def rhat_half(a, b):
    """``|a [+]_{1/2} b| = sqrt(r1^2 + r2^2 + 2 a.b + |a x b|^2) / 2`` (symmetric in a, b)."""
    a = as_bloch(a)
    b = as_bloch(b)
    cr = np.cross(a, b)
    sq = np.sum(a * a, -1) + np.sum(b * b, -1) + 2.0 * np.sum(a * b, -1) + np.sum(cr * cr, -1)
    return np.minimum(0.5 * np.sqrt(np.maximum(sq, 0.0)), 1.0)


def qjsd_hat(a, b):
    """Lower bound of :func:`qjsd` built from the quantum addition at ``t = 1/2``.

    Clamped at 0 so rounding never feeds a negative number to a square root.
    """
    a = as_bloch(a)
    b = as_bloch(b)
    mid = entropy_phi(rhat_half(a, b))
    out = np.maximum(mid - 0.5 * (entropy_phi(_lengths(a)) + entropy_phi(_lengths(b))), 0.0)
    return out if np.ndim(out) else float(out)


def dist_J(a, b):
    return np.sqrt(qjsd(a, b))


def dist_Jhat(a, b):
    return np.sqrt(qjsd_hat(a, b))


def triangle_delta(a, b, c):
    """``(Delta, Delta')`` with ``a`` as the apex.

    ``Delta = D(a,b) + D(a,c) - D(b,c)`` for ``D = sqrt(Jhat)`` and ``Delta'`` is
    the same combination of ``Jhat`` itself.  Negative values break the
    triangle inequality.
    """
    jab, jac, jbc = qjsd_hat(a, b), qjsd_hat(a, c), qjsd_hat(b, c)
    delta = np.sqrt(jab) + np.sqrt(jac) - np.sqrt(jbc)
    delta_p = jab + jac - jbc
    if np.ndim(delta):
        return delta, delta_p
    return float(delta), float(delta_p)


@dataclass
class TripleReport:
    vectors: list[list[float]]
    delta: float
    delta_prime: float
    delta_apex: int
    delta_prime_apex: int
    mode: str
    seed: int
    draw_index: int
    pure: list[bool] = field(default_factory=list)

    @property
    def violates_delta(self) -> bool:
        return self.delta < 0.0

    @property
    def violates_delta_prime(self) -> bool:
        return self.delta_prime < 0.0

    def recompute(self) -> tuple[float, float]:
        """``(Delta, Delta')`` re-evaluated from the stored vectors at the stored apexes."""
        v = [np.array(x) for x in self.vectors]
        i, j, k = _APEXES[self.delta_apex]
        d, _ = triangle_delta(v[i], v[j], v[k])
        i, j, k = _APEXES[self.delta_prime_apex]
        _, dp = triangle_delta(v[i], v[j], v[k])
        return d, dp

    def as_dict(self) -> dict:
        return {
            "vectors": self.vectors,
            "delta": self.delta,
            "delta_prime": self.delta_prime,
            "delta_apex": self.delta_apex,
            "delta_prime_apex": self.delta_prime_apex,
            "violates_delta": self.violates_delta,
            "violates_delta_prime": self.violates_delta_prime,
            "pure": self.pure,
            "mode": self.mode,
            "seed": self.seed,
            "draw_index": self.draw_index,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)


def draw_triples(mode: str, n: int, s: SeededSampler) -> np.ndarray:
    """``n`` triples of Bloch vectors, shape ``(n, 3, 3)``."""
    if mode not in MODES:
        raise DomainError(f"mode must be one of {MODES}, got {mode!r}")
    if mode == "pure":
        return sample_direction(s, (n, 3))
    return sample_hs_state(s, (n, 3))


def all_apex_deltas(triples: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """``Delta`` and ``Delta'`` for every apex choice, each of shape ``(n, 3)``."""
    t = np.asarray(triples, dtype=float)
    jh = {}
    for i, j in ((0, 1), (0, 2), (1, 2)):
        jh[i, j] = jh[j, i] = qjsd_hat(t[:, i], t[:, j])
    d = np.empty((t.shape[0], 3))
    dp = np.empty((t.shape[0], 3))
    for col, (i, j, k) in enumerate(_APEXES):
        d[:, col] = np.sqrt(jh[i, j]) + np.sqrt(jh[i, k]) - np.sqrt(jh[j, k])
        dp[:, col] = jh[i, j] + jh[i, k] - jh[j, k]
    return d, dp


def violation_search(mode: str, n_triples: int, s: SeededSampler) -> list[TripleReport]:
    """Random triples violating the triangle inequality for ``sqrt(Jhat)`` or ``Jhat``.

    Every apex assignment is tried and the smallest value is kept, so a
    report exists whenever any arrangement of the triple fails.  Reports
    come back ordered by draw index.
    """
    if n_triples < 1:
        raise DomainError("n_triples must be >= 1")
    triples = draw_triples(mode, n_triples, s)
    d, dp = all_apex_deltas(triples)
    d_apex = np.argmin(d, axis=1)
    dp_apex = np.argmin(dp, axis=1)
    rows = np.arange(n_triples)
    d_min = d[rows, d_apex]
    dp_min = dp[rows, dp_apex]
    reports = []
    for idx in np.flatnonzero((d_min < 0.0) | (dp_min < 0.0)):
        vecs = triples[idx]
        reports.append(TripleReport(
            vectors=vecs.tolist(),
            delta=float(d_min[idx]),
            delta_prime=float(dp_min[idx]),
            delta_apex=int(d_apex[idx]),
            delta_prime_apex=int(dp_apex[idx]),
            mode=mode,
            seed=s.seed,
            draw_index=int(idx),
            pure=[bool(abs(np.linalg.norm(v) - 1.0) < 1e-12) for v in vecs],
        ))
    return reports


def dist_J_triangle_violations(triples: np.ndarray, tol: float = 1e-12) -> int:
    """Number of triples for which ``sqrt(J)`` breaks the triangle inequality (by more than ``tol``)."""
    t = np.asarray(triples, dtype=float)
    dj = {}
    for i, j in ((0, 1), (0, 2), (1, 2)):
        dj[i, j] = dj[j, i] = np.sqrt(qjsd(t[:, i], t[:, j]))
    bad = np.zeros(t.shape[0], dtype=bool)
    for i, j, k in permutations(range(3)):
        if j < k:
            bad |= dj[i, j] + dj[i, k] - dj[j, k] < -tol
    return int(np.count_nonzero(bad))
