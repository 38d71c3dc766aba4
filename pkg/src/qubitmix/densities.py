"""Closed-form densities for the spectrum of a mixture of two random qubits.

Two qubits are drawn uniformly from the unitary orbits with minimal
eigenvalues ``mu`` and ``nu`` (Bloch lengths ``r1 = 1 - 2 mu``,
``r2 = 1 - 2 nu``).  For both the equal-weight mixture and the quantum
addition at ``t = 1/2`` the mixed Bloch length lives on
``[r_minus, r_plus] = [|r1 - r2|/2, (r1 + r2)/2]``, and an eigenvalue
``lambda = (1 +/- r)/2`` lives on ``[T0, T1] U [1 - T1, 1 - T0]`` with
``T0 = (mu + nu)/2`` and ``T1 = (1 - |mu - nu|)/2``.

Eigenvalue densities describe one eigenvalue chosen at random from the
pair, so each branch carries mass 1/2.  All pdfs and cdfs accept arrays
and return 0 (pdf) or the appropriate constant (cdf) outside the support.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateParameterError

__all__ = [
    "SupportSpec",
    "lambda_support",
    "radius_support",
    "pdf_lambda_equi",
    "pdf_r_equi",
    "pdf_r_qadd",
    "pdf_lambda_qadd",
    "pdf_maxeig_hs",
    "pdf_angle",
    "cdf_lambda_equi",
    "cdf_r_equi",
    "cdf_r_qadd",
    "cdf_lambda_qadd",
    "cdf_maxeig_hs",
    "cdf_angle",
]


@dataclass(frozen=True)
class SupportSpec:
    """Union of closed intervals; adjacent intervals that touch are merged."""

    intervals: tuple[tuple[float, float], ...]

    @classmethod
    def of(cls, *intervals: tuple[float, float]) -> "SupportSpec":
        merged: list[list[float]] = []
        for lo, hi in sorted(intervals):
            if merged and lo <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], hi)
            else:
                merged.append([lo, hi])
        return cls(tuple((float(lo), float(hi)) for lo, hi in merged))

    @property
    def lo(self) -> float:
        return self.intervals[0][0]

    @property
    def hi(self) -> float:
        return self.intervals[-1][1]

    @property
    def endpoints(self) -> list[float]:
        return [x for iv in self.intervals for x in iv]

    def contains(self, x, tol: float = 0.0):
        x = np.asarray(x, dtype=float)
        hit = np.zeros(x.shape, dtype=bool)
        for lo, hi in self.intervals:
            hit |= (x >= lo - tol) & (x <= hi + tol)
        return hit


def _check_orbit(mu: float, name: str) -> float:
    mu = float(mu)
    if not 0.0 < mu < 0.5:
        raise DegenerateParameterError(f"{name} must lie strictly inside (0, 1/2), got {mu}")
    return mu


def _check_radius(r: float, name: str) -> float:
    r = float(r)
    if not 0.0 < r <= 1.0:
        raise DegenerateParameterError(f"{name} must lie in (0, 1], got {r}")
    return r


def _radii(mu: float, nu: float) -> tuple[float, float]:
    return 1.0 - 2.0 * _check_orbit(mu, "mu"), 1.0 - 2.0 * _check_orbit(nu, "nu")


def radius_support(r1: float, r2: float) -> SupportSpec:
    return SupportSpec.of((abs(r1 - r2) / 2.0, (r1 + r2) / 2.0))


def lambda_support(mu: float, nu: float) -> SupportSpec:
    t0 = (mu + nu) / 2.0
    t1 = (1.0 - abs(mu - nu)) / 2.0
    return SupportSpec.of((t0, t1), (1.0 - t1, 1.0 - t0))


def _out(x):
    return x if np.ndim(x) else float(x)


# --- Bloch-length densities ---------------------------------------------------


def pdf_r_equi(r, r1: float, r2: float):
    """Density ``2r / (r1 r2)`` of ``|(a + b)/2|`` for ``|a| = r1``, ``|b| = r2``."""
    r1 = _check_radius(r1, "r1")
    r2 = _check_radius(r2, "r2")
    r = np.asarray(r, dtype=float)
    rm, rp = abs(r1 - r2) / 2.0, (r1 + r2) / 2.0
    inside = (r >= rm) & (r <= rp)
    return _out(np.where(inside, 2.0 * r / (r1 * r2), 0.0))


def cdf_r_equi(r, r1: float, r2: float):
    r1 = _check_radius(r1, "r1")
    r2 = _check_radius(r2, "r2")
    r = np.asarray(r, dtype=float)
    rm, rp = abs(r1 - r2) / 2.0, (r1 + r2) / 2.0
    rc = np.clip(r, rm, rp)
    return _out(np.clip((rc * rc - rm * rm) / (r1 * r2), 0.0, 1.0))


def _check_qadd_radii(r1: float, r2: float) -> tuple[float, float]:
    r1 = _check_radius(r1, "r1")
    r2 = _check_radius(r2, "r2")
    if r1 == 1.0 and r2 == 1.0:
        raise DegenerateParameterError("quantum-addition density is singular at r1 = r2 = 1")
    return r1, r2


def pdf_r_qadd(rhat, r1: float, r2: float):
    """Density of ``|a [+]_{1/2} b|``: ``2 rhat / (r1 r2 sqrt(A - 4 rhat^2))``, ``A = (1 + r1^2)(1 + r2^2)``."""
    r1, r2 = _check_qadd_radii(r1, r2)
    rhat = np.asarray(rhat, dtype=float)
    rm, rp = abs(r1 - r2) / 2.0, (r1 + r2) / 2.0
    big_a = (1.0 + r1 * r1) * (1.0 + r2 * r2)
    inside = (rhat >= rm) & (rhat <= rp)
    root = np.sqrt(np.clip(big_a - 4.0 * rhat * rhat, np.finfo(float).tiny, None))
    return _out(np.where(inside, 2.0 * rhat / (r1 * r2 * root), 0.0))


def cdf_r_qadd(rhat, r1: float, r2: float):
    r1, r2 = _check_qadd_radii(r1, r2)
    rhat = np.asarray(rhat, dtype=float)
    rm, rp = abs(r1 - r2) / 2.0, (r1 + r2) / 2.0
    big_a = (1.0 + r1 * r1) * (1.0 + r2 * r2)
    rc = np.clip(rhat, rm, rp)
    # sqrt(A - 4 rm^2) = 1 + r1 r2, so the antiderivative starts at 0 on the left edge
    root = np.sqrt(np.clip(big_a - 4.0 * rc * rc, 0.0, None))
    return _out(np.clip((1.0 + r1 * r2 - root) / (2.0 * r1 * r2), 0.0, 1.0))


# --- eigenvalue densities -------------------------------------------------------
# An eigenvalue lam maps to r = |2 lam - 1| and each branch carries half the mass,
# so f_lam(lam) = f_r(|2 lam - 1|) and the cdf is assembled branch by branch.


def _lambda_cdf_from_radius(lam, cdf_r) -> np.ndarray:
    lam = np.asarray(lam, dtype=float)
    lower = 0.5 * (1.0 - cdf_r(np.clip(1.0 - 2.0 * lam, 0.0, None)))
    upper = 0.5 + 0.5 * cdf_r(np.clip(2.0 * lam - 1.0, 0.0, None))
    return np.where(lam < 0.5, lower, upper)


def pdf_lambda_equi(lam, mu: float, nu: float):
    """Eigenvalue density ``|lam - 1/2| / ((1/2 - mu)(1/2 - nu))`` of the equal-weight mixture."""
    mu = _check_orbit(mu, "mu")
    nu = _check_orbit(nu, "nu")
    lam = np.asarray(lam, dtype=float)
    inside = lambda_support(mu, nu).contains(lam)
    return _out(np.where(inside, np.abs(lam - 0.5) / ((0.5 - mu) * (0.5 - nu)), 0.0))


def cdf_lambda_equi(lam, mu: float, nu: float):
    r1, r2 = _radii(mu, nu)
    return _out(_lambda_cdf_from_radius(lam, lambda x: np.asarray(cdf_r_equi(x, r1, r2))))


def pdf_lambda_qadd(lam, mu: float, nu: float):
    """Eigenvalue density of ``a [+]_{1/2} b``.

    ``|lam - 1/2| / (2 (1/2 - mu)(1/2 - nu) sqrt(B - (2 lam - 1)^2))`` with
    ``B = (2 mu^2 - 2 mu + 1)(2 nu^2 - 2 nu + 1)``.
    """
    mu = _check_orbit(mu, "mu")
    nu = _check_orbit(nu, "nu")
    lam = np.asarray(lam, dtype=float)
    big_b = (2 * mu * mu - 2 * mu + 1) * (2 * nu * nu - 2 * nu + 1)
    inside = lambda_support(mu, nu).contains(lam)
    root = np.sqrt(np.clip(big_b - (2.0 * lam - 1.0) ** 2, np.finfo(float).tiny, None))
    val = np.abs(lam - 0.5) / (2.0 * (0.5 - mu) * (0.5 - nu) * root)
    return _out(np.where(inside, val, 0.0))


def cdf_lambda_qadd(lam, mu: float, nu: float):
    r1, r2 = _radii(mu, nu)
    return _out(_lambda_cdf_from_radius(lam, lambda x: np.asarray(cdf_r_qadd(x, r1, r2))))


# --- single-state laws -------------------------------------------------------------


def pdf_maxeig_hs(x):
    """Largest eigenvalue of a Hilbert-Schmidt qubit: ``24 (x - 1/2)^2`` on [1/2, 1]."""
    x = np.asarray(x, dtype=float)
    return _out(np.where((x >= 0.5) & (x <= 1.0), 24.0 * (x - 0.5) ** 2, 0.0))


def cdf_maxeig_hs(x):
    x = np.clip(np.asarray(x, dtype=float), 0.5, 1.0)
    return _out(8.0 * (x - 0.5) ** 3)


def pdf_angle(theta):
    """Angle between two independent isotropic directions: ``sin(theta) / 2`` on [0, pi]."""
    theta = np.asarray(theta, dtype=float)
    return _out(np.where((theta >= 0.0) & (theta <= np.pi), 0.5 * np.sin(theta), 0.0))


def cdf_angle(theta):
    theta = np.clip(np.asarray(theta, dtype=float), 0.0, np.pi)
    return _out(0.5 * (1.0 - np.cos(theta)))
