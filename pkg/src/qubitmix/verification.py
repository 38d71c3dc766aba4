"""Monte Carlo samplers for each closed-form density and the KS check against it."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import densities as dens
from .ensembles import SeededSampler, sample_direction, sample_hs_state, sample_radius_state
from .errors import DomainError
from .mixing import quantum_add_bloch
from .stats import ks_one_sample

#: KS threshold at one million samples; scaled as ``KS_COEFF / sqrt(N)`` elsewhere.
KS_COEFF = 2.0

KINDS = ("lambda-equi", "lambda-qadd", "r-equi", "r-qadd", "maxeig", "angle")

# which parameters each kind takes
KIND_PARAMS = {
    "lambda-equi": ("mu", "nu"),
    "lambda-qadd": ("mu", "nu"),
    "r-equi": ("r1", "r2"),
    "r-qadd": ("r1", "r2"),
    "maxeig": (),
    "angle": (),
}


def ks_threshold(n: int) -> float:
    return KS_COEFF / math.sqrt(n)


def _radii_for(kind: str, params: dict) -> tuple[float, float]:
    if kind.startswith("lambda"):
        return 1.0 - 2.0 * params["mu"], 1.0 - 2.0 * params["nu"]
    return params["r1"], params["r2"]


def _check_params(kind: str, params: dict) -> None:
    if kind not in KIND_PARAMS:
        raise DomainError(f"unknown density kind {kind!r}; choose from {', '.join(KINDS)}")
    missing = [p for p in KIND_PARAMS[kind] if params.get(p) is None]
    if missing:
        raise DomainError(f"kind {kind!r} needs parameters {', '.join(missing)}")


def pdf_for(kind: str, params: dict):
    """The density of ``kind`` as a one-argument callable."""
    _check_params(kind, params)
    if kind == "lambda-equi":
        return lambda x: dens.pdf_lambda_equi(x, params["mu"], params["nu"])
    if kind == "lambda-qadd":
        return lambda x: dens.pdf_lambda_qadd(x, params["mu"], params["nu"])
    if kind == "r-equi":
        return lambda x: dens.pdf_r_equi(x, params["r1"], params["r2"])
    if kind == "r-qadd":
        return lambda x: dens.pdf_r_qadd(x, params["r1"], params["r2"])
    if kind == "maxeig":
        return dens.pdf_maxeig_hs
    return dens.pdf_angle


def cdf_for(kind: str, params: dict):
    _check_params(kind, params)
    if kind == "lambda-equi":
        return lambda x: dens.cdf_lambda_equi(x, params["mu"], params["nu"])
    if kind == "lambda-qadd":
        return lambda x: dens.cdf_lambda_qadd(x, params["mu"], params["nu"])
    if kind == "r-equi":
        return lambda x: dens.cdf_r_equi(x, params["r1"], params["r2"])
    if kind == "r-qadd":
        return lambda x: dens.cdf_r_qadd(x, params["r1"], params["r2"])
    if kind == "maxeig":
        return dens.cdf_maxeig_hs
    return dens.cdf_angle


def support_for(kind: str, params: dict) -> dens.SupportSpec:
    _check_params(kind, params)
    if kind.startswith("lambda"):
        return dens.lambda_support(params["mu"], params["nu"])
    if kind.startswith("r-"):
        return dens.radius_support(params["r1"], params["r2"])
    if kind == "maxeig":
        return dens.SupportSpec.of((0.5, 1.0))
    return dens.SupportSpec.of((0.0, math.pi))


def draw_samples(kind: str, params: dict, n: int, s: SeededSampler) -> np.ndarray:
    """Simulate ``n`` draws of the quantity whose law ``pdf_for(kind, params)`` claims to give.

    Mixture kinds draw two orbit states and mix them; eigenvalue kinds then
    keep one of the two eigenvalues at random.  ``maxeig`` uses Hilbert-Schmidt
    states and ``angle`` measures the angle between two independent directions.
    """
    _check_params(kind, params)
    if kind == "maxeig":
        return 0.5 * (1.0 + np.minimum(np.linalg.norm(sample_hs_state(s, n), axis=-1), 1.0))
    if kind == "angle":
        a, b = sample_direction(s, n), sample_direction(s, n)
        return np.arccos(np.clip(np.sum(a * b, axis=-1), -1.0, 1.0))
    r1, r2 = _radii_for(kind, params)
    a = sample_radius_state(r1, s, n)
    b = sample_radius_state(r2, s, n)
    mixed = 0.5 * (a + b) if kind.endswith("equi") else quantum_add_bloch(a, b, 0.5)
    r = np.minimum(np.linalg.norm(mixed, axis=-1), 1.0)
    if kind.startswith("r-"):
        return r
    sign = np.where(s.uniform(n) < 0.5, -1.0, 1.0)
    return 0.5 * (1.0 + sign * r)


@dataclass(frozen=True)
class VerifyReport:
    kind: str
    params: dict
    sample_params: dict
    n_samples: int
    seed: int
    ks: float
    threshold: float
    max_support_excess: float

    @property
    def passed(self) -> bool:
        return self.ks < self.threshold

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "params": self.params,
            "sample_params": self.sample_params,
            "n_samples": self.n_samples,
            "seed": self.seed,
            "ks": self.ks,
            "threshold": self.threshold,
            "max_support_excess": self.max_support_excess,
            "pass": self.passed,
        }


def verify_density(kind: str, params: dict, n: int, s: SeededSampler,
                   sample_params: dict | None = None, threshold: float | None = None) -> VerifyReport:
    """KS statistic of simulated draws against the closed-form CDF.

    ``sample_params`` lets the simulation use different parameters from the
    curve (a negative control); by default both use ``params``.
    """
    sample_params = dict(params if sample_params is None else sample_params)
    cdf = cdf_for(kind, params)
    x = np.sort(draw_samples(kind, sample_params, n, s))
    ks = ks_one_sample(x, cdf)
    sup = support_for(kind, params)
    outside = ~sup.contains(x)
    excess = 0.0
    if np.any(outside):
        xo = x[outside]
        excess = float(np.max(np.min(np.abs(xo[:, None] - np.array(sup.endpoints)[None, :]), axis=1)))
    return VerifyReport(kind, dict(params), sample_params, n, s.seed, ks,
                        ks_threshold(n) if threshold is None else threshold, excess)
