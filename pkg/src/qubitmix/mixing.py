"""Two ways of mixing qubit states.

* Convex mixture ``w a + (1 - w) b``.
* Quantum addition through the partial swap ``U_t = sqrt(t) I + sqrt(1 - t) i S``::

      a [+]_t b = Tr_2[U_t (a (x) b) U_t^dag]
                = t a + (1 - t) b - i sqrt(t (1 - t)) [a, b]

  In Bloch form this is ``t r1 + (1 - t) r2 + sqrt(t (1 - t)) r1 x r2``
  with the right-handed cross product.  The commutator carries ``-i``
  while the Bloch cross term carries ``+``; the two agree because
  ``[r1.sigma, r2.sigma] = 2i (r1 x r2).sigma``.

The matrix functions here (:func:`channel_Et` and friends) exist so the
Bloch closed form can be checked against an explicit 4x4 computation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bloch import as_bloch, check_density_matrix, entropy_phi
from .errors import DomainError

#: Two-qubit swap, ``S|ij> = |ji>``.
SWAP = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]],
    dtype=complex,
)


def _weight(w, name: str = "w") -> float:
    w = float(w)
    if not 0.0 <= w <= 1.0:
        raise DomainError(f"{name} must lie in [0, 1], got {w}")
    return w


def mix_weighted(a, b, w: float) -> np.ndarray:
    """Bloch vector of ``w rho(a) + (1 - w) rho(b)``."""
    w = _weight(w)
    return w * as_bloch(a) + (1.0 - w) * as_bloch(b)


def partial_swap_unitary(t: float) -> np.ndarray:
    """The 4x4 partial swap ``sqrt(t) I4 + sqrt(1 - t) i S``."""
    t = _weight(t, "t")
    return np.sqrt(t) * np.eye(4, dtype=complex) + 1j * np.sqrt(1.0 - t) * SWAP


def partial_trace(m4: np.ndarray, keep: int = 0) -> np.ndarray:
    """Reduce a two-qubit operator to qubit ``keep`` (0 = first factor)."""
    t = np.asarray(m4).reshape(2, 2, 2, 2)
    if keep == 0:
        return np.einsum("ijkj->ik", t)
    if keep == 1:
        return np.einsum("ijil->jl", t)
    raise DomainError(f"keep must be 0 or 1, got {keep}")


def _conjugated_product(a, b, t: float) -> np.ndarray:
    a = check_density_matrix(a)
    b = check_density_matrix(b)
    u = partial_swap_unitary(t)
    return u @ np.kron(a, b) @ u.conj().T


def channel_Et(a, b, t: float) -> np.ndarray:
    """``a [+]_t b``: conjugate ``a (x) b`` by ``U_t`` and trace out the second qubit."""
    return partial_trace(_conjugated_product(a, b, t), keep=0)


def channel_Et_hat(a, b, t: float) -> np.ndarray:
    """``b [+]_t a``: same conjugation, first qubit traced out."""
    return partial_trace(_conjugated_product(a, b, t), keep=1)


def addition_commutator_form(a, b, t: float) -> np.ndarray:
    """``t a + (1 - t) b - i sqrt(t (1 - t)) [a, b]``."""
    t = _weight(t, "t")
    a = check_density_matrix(a)
    b = check_density_matrix(b)
    return t * a + (1.0 - t) * b - 1j * np.sqrt(t * (1.0 - t)) * (a @ b - b @ a)


def quantum_add_bloch(a, b, w: float) -> np.ndarray:
    """Bloch vector of ``rho(a) [+]_w rho(b)``; broadcasts over leading axes."""
    w = _weight(w)
    a = as_bloch(a)
    b = as_bloch(b)
    out = w * a + (1.0 - w) * b + np.sqrt(w * (1.0 - w)) * np.cross(a, b)
    return as_bloch(out)


@dataclass(frozen=True)
class MixCurve:
    """Lengths of ``a [+]_t b`` and ``b [+]_t a`` as functions of ``t``.

    Only the lengths ``r1, r2`` and the angle ``theta`` between the Bloch
    vectors matter.  With ``alpha = 2 r1 r2 cos(theta) + r1^2 r2^2 sin^2(theta)``
    and ``phi(t) = (r1^2 + r2^2 - alpha) t^2 + alpha t``::

        r12(t) = sqrt(phi(t) - 2 r2^2 t + r2^2)
        r21(t) = sqrt(phi(t) - 2 r1^2 t + r1^2)
    """

    r1: float
    r2: float
    theta: float

    def __post_init__(self):
        for name in ("r1", "r2"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise DomainError(f"{name} must lie in [0, 1], got {v}")
        if not 0.0 <= self.theta <= np.pi:
            raise DomainError(f"theta must lie in [0, pi], got {self.theta}")

    @property
    def alpha(self) -> float:
        r1, r2, th = self.r1, self.r2, self.theta
        return 2.0 * r1 * r2 * np.cos(th) + (r1 * r2 * np.sin(th)) ** 2

    def phi(self, t):
        a = self.alpha
        t = np.asarray(t, dtype=float)
        return (self.r1**2 + self.r2**2 - a) * t * t + a * t

    def lengths(self, t):
        t = np.asarray(t, dtype=float)
        if np.any(t < 0.0) or np.any(t > 1.0):
            raise DomainError("t must lie in [0, 1]")
        ph = self.phi(t)
        r12 = np.sqrt(np.clip(ph - 2.0 * self.r2**2 * t + self.r2**2, 0.0, 1.0))
        r21 = np.sqrt(np.clip(ph - 2.0 * self.r1**2 * t + self.r1**2, 0.0, 1.0))
        return r12, r21

    def s(self, t):
        """Total entropy ``S(a [+]_t b) + S(b [+]_t a)``."""
        r12, r21 = self.lengths(t)
        return entropy_phi(r12) + entropy_phi(r21)

    def g2(self, t):
        return self.s(t) - entropy_phi(self.r1) - entropy_phi(self.r2)


def mix_curves(c: MixCurve, t):
    """``(r12(t), r21(t))`` for the curve ``c``."""
    return c.lengths(t)


def curve_from_vectors(a, b) -> MixCurve:
    a = as_bloch(a)
    b = as_bloch(b)
    r1 = float(np.linalg.norm(a))
    r2 = float(np.linalg.norm(b))
    if r1 == 0.0 or r2 == 0.0:
        theta = 0.0
    else:
        theta = float(np.arccos(np.clip(np.dot(a, b) / (r1 * r2), -1.0, 1.0)))
    return MixCurve(min(r1, 1.0), min(r2, 1.0), theta)


def g2(a, b, t: float):
    """Correlative power ``S(a [+]_t b) + S(b [+]_t a) - S(a) - S(b)`` of the partial swap."""
    t = _weight(t, "t")
    a = as_bloch(a)
    b = as_bloch(b)
    r12 = np.linalg.norm(quantum_add_bloch(a, b, t), axis=-1)
    r21 = np.linalg.norm(quantum_add_bloch(b, a, t), axis=-1)
    ra = np.linalg.norm(a, axis=-1)
    rb = np.linalg.norm(b, axis=-1)
    return entropy_phi(r12) + entropy_phi(r21) - entropy_phi(ra) - entropy_phi(rb)
