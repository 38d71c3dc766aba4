"""Exact single-qubit algebra in the Bloch picture.

A qubit state is ``rho(r) = (I + r . sigma) / 2`` with ``|r| <= 1``.  Bloch
vectors are plain float arrays whose last axis has length 3, so every
function here broadcasts over leading axes.  Density matrices are complex
arrays of shape ``(..., 2, 2)``.

Entropies are in bits.  The relative entropy of coherence is taken in the
computational basis.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError, InvalidStateError

#: Lengths in ``(1, 1 + BLOCH_EPS]`` are clamped to 1; longer vectors are rejected.
BLOCH_EPS = 1e-9
#: Eigenvalues below this are treated as exact zeros in ``-x log x``.
ZERO_EIG = 1e-15
#: Tolerance for Hermiticity, trace and positivity checks on matrices.
MATRIX_TOL = 1e-10

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = np.stack([SIGMA_X, SIGMA_Y, SIGMA_Z])
IDENTITY2 = np.eye(2, dtype=complex)


def as_bloch(v) -> np.ndarray:
    """Validate Bloch vector(s), clamping lengths that overshoot 1 by at most ``BLOCH_EPS``."""
    v = np.array(v, dtype=float)
    if v.shape[-1:] != (3,):
        raise InvalidStateError(f"Bloch vectors need a trailing axis of length 3, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise InvalidStateError("Bloch vector has non-finite components")
    r = np.linalg.norm(v, axis=-1)
    if np.any(r > 1.0 + BLOCH_EPS):
        raise InvalidStateError(f"Bloch vector length {np.max(r)!r} exceeds 1")
    over = r > 1.0
    if np.any(over):
        scale = np.where(over, 1.0 / np.where(over, r, 1.0), 1.0)
        v = v * scale[..., None]
    return v


def _as_length(r) -> np.ndarray:
    r = np.asarray(r, dtype=float)
    if np.any(~np.isfinite(r)) or np.any(r < -BLOCH_EPS) or np.any(r > 1.0 + BLOCH_EPS):
        raise DomainError(f"Bloch length must lie in [0, 1], got {r!r}")
    return np.clip(r, 0.0, 1.0)


def bloch_to_matrix(v) -> np.ndarray:
    """Return ``(I + v . sigma) / 2``."""
    v = as_bloch(v)
    return 0.5 * (IDENTITY2 + np.einsum("...k,kij->...ij", v.astype(complex), PAULI))


def check_density_matrix(m, tol: float = MATRIX_TOL) -> np.ndarray:
    """Raise :class:`InvalidStateError` unless ``m`` is a 2x2 density matrix (or a stack of them)."""
    m = np.asarray(m, dtype=complex)
    if m.shape[-2:] != (2, 2):
        raise InvalidStateError(f"expected 2x2 matrices, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InvalidStateError("matrix has non-finite entries")
    if np.max(np.abs(m - np.conj(np.swapaxes(m, -1, -2))), initial=0.0) > tol:
        raise InvalidStateError("matrix is not Hermitian")
    tr = np.real(m[..., 0, 0] + m[..., 1, 1])
    if np.max(np.abs(tr - 1.0), initial=0.0) > tol:
        raise InvalidStateError("matrix does not have unit trace")
    lo, _ = _eig2(m)
    if np.min(lo, initial=0.0) < -tol:
        raise InvalidStateError("matrix has a negative eigenvalue")
    return m


def _eig2(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # closed-form spectrum of a 2x2 Hermitian matrix
    a = np.real(m[..., 0, 0])
    d = np.real(m[..., 1, 1])
    b = m[..., 0, 1]
    half_gap = 0.5 * np.sqrt((a - d) ** 2 + 4.0 * np.abs(b) ** 2)
    mid = 0.5 * (a + d)
    return mid - half_gap, mid + half_gap


def matrix_to_bloch(m) -> np.ndarray:
    """Inverse of :func:`bloch_to_matrix`."""
    m = check_density_matrix(m)
    off = m[..., 0, 1]
    x = 2.0 * np.real(off)
    y = -2.0 * np.imag(off)
    z = np.real(m[..., 0, 0] - m[..., 1, 1])
    return as_bloch(np.stack([x, y, z], axis=-1))


def eigenvalues(r):
    """Eigenvalues ``((1 + r)/2, (1 - r)/2)`` of a qubit with Bloch length ``r``."""
    r = _as_length(r)
    return 0.5 * (1.0 + r), 0.5 * (1.0 - r)


def _xlog2x(p: np.ndarray) -> np.ndarray:
    safe = np.where(p < ZERO_EIG, 1.0, p)
    return np.where(p < ZERO_EIG, 0.0, p * np.log2(safe))


def binary_entropy(p):
    """Shannon entropy ``H2(p)`` in bits, with ``0 log 0 = 0``."""
    p = np.asarray(p, dtype=float)
    if np.any(p < -BLOCH_EPS) or np.any(p > 1.0 + BLOCH_EPS):
        raise DomainError(f"probability must lie in [0, 1], got {p!r}")
    p = np.clip(p, 0.0, 1.0)
    out = 0.0 - _xlog2x(p) - _xlog2x(1.0 - p)
    return out if out.ndim else float(out)


def entropy_phi(r):
    """Von Neumann entropy (bits) of any qubit whose Bloch vector has length ``r``.

    This is ``H2((1 - r) / 2)``; it decreases from 1 at ``r = 0`` to 0 at ``r = 1``.
    """
    r = _as_length(r)
    lo = 0.5 * (1.0 - r)
    out = 0.0 - _xlog2x(lo) - _xlog2x(1.0 - lo)
    return out if out.ndim else float(out)


def von_neumann_entropy(m):
    """Entropy in bits from a direct diagonalisation of the matrix."""
    m = check_density_matrix(m)
    lam = np.clip(np.linalg.eigvalsh(m), 0.0, None)
    out = -np.sum(_xlog2x(lam), axis=-1)
    return out if out.ndim else float(out)


def coherence_bloch(v):
    """Relative entropy of coherence from Bloch vector(s): ``H2((1 + z)/2) - Phi(|v|)``."""
    v = as_bloch(v)
    r = np.linalg.norm(v, axis=-1)
    out = binary_entropy(0.5 * (1.0 + v[..., 2])) - entropy_phi(r)
    return np.maximum(out, 0.0) if np.ndim(out) else max(float(out), 0.0)


def rel_entropy_coherence(m):
    """``S(diag(m)) - S(m)`` in bits, diagonal taken in the computational basis."""
    m = check_density_matrix(m)
    diag = np.clip(np.real(np.stack([m[..., 0, 0], m[..., 1, 1]], axis=-1)), 0.0, None)
    s_diag = -np.sum(_xlog2x(diag), axis=-1)
    out = np.maximum(s_diag - von_neumann_entropy(m), 0.0)
    return out if np.ndim(out) else float(out)


def fidelity_squared(a, b):
    """Squared Uhlmann fidelity of two qubit density matrices.

    Uses the qubit identity ``F^2 = Tr(ab) + 2 sqrt(det a det b)``.
    """
    a = check_density_matrix(a)
    b = check_density_matrix(b)
    det_a = np.maximum(np.real(np.linalg.det(a)), 0.0)
    det_b = np.maximum(np.real(np.linalg.det(b)), 0.0)
    overlap = np.real(np.einsum("...ij,...ji->...", a, b))
    out = np.clip(overlap + 2.0 * np.sqrt(det_a * det_b), 0.0, 1.0)
    return out if out.ndim else float(out)


def fidelity_squared_bloch(u, v):
    """``F^2 = (1 + u.v + sqrt((1 - |u|^2)(1 - |v|^2))) / 2`` for Bloch vectors."""
    u = as_bloch(u)
    v = as_bloch(v)
    uu = np.minimum(np.sum(u * u, axis=-1), 1.0)
    vv = np.minimum(np.sum(v * v, axis=-1), 1.0)
    out = 0.5 * (1.0 + np.sum(u * v, axis=-1) + np.sqrt((1.0 - uu) * (1.0 - vv)))
    out = np.clip(out, 0.0, 1.0)
    return out if out.ndim else float(out)
