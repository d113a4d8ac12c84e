"""Qubit states on the Bloch ball: conversions and distance metrics.

A qubit state is either a 2x2 complex density matrix rho (Hermitian,
positive semidefinite, unit trace) or the equivalent real Bloch vector
s = [s1, s2, s3] with ||s|| <= 1.  The fidelity and the Hilbert-Schmidt
distance are each implemented twice, once on matrices and once in closed
form on Bloch vectors, so either path can serve as a check on the other.
"""

from __future__ import annotations

import math

import numpy as np

# Slack allowed on the unit-ball constraint (double-precision headroom).
BALL_TOL = 1e-12

IDENTITY = np.eye(2, dtype=complex)
SIGMA_1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_3 = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_1, SIGMA_2, SIGMA_3)


class InvalidStateError(ValueError):
    """The given vector or matrix does not describe a physical qubit state."""


def as_bloch(s) -> np.ndarray:
    """Coerce ``s`` to a float vector of shape (3,)."""
    v = np.asarray(s, dtype=float)
    if v.shape != (3,):
        raise InvalidStateError(f"Bloch vector must have shape (3,), got {v.shape}")
    return v


def is_physical(s, tol: float = BALL_TOL) -> bool:
    """True when s1^2 + s2^2 + s3^2 <= 1 + tol."""
    v = as_bloch(s)
    return float(v @ v) <= 1.0 + tol


def is_pure(s, tol: float = BALL_TOL) -> bool:
    """True when the vector lies on the ball surface, | ||s|| - 1 | <= tol."""
    return abs(float(np.linalg.norm(as_bloch(s))) - 1.0) <= tol


def bloch_to_density(s) -> np.ndarray:
    """Density matrix of a Bloch vector.

    Expands rho = (I + s1*sigma1 + s2*sigma2 + s3*sigma3) / 2.

    Args:
        s: real 3-vector with ||s|| <= 1 (up to ``BALL_TOL``).

    Returns:
        2x2 complex Hermitian matrix with unit trace and Tr(rho sigma_i) = s_i.

    Raises:
        InvalidStateError: if ``s`` lies outside the unit ball.
    """
    v = as_bloch(s)
    if not is_physical(v):
        raise InvalidStateError(
            f"Bloch vector with ||s|| = {np.linalg.norm(v):.6g} lies outside the unit ball"
        )
    return 0.5 * (IDENTITY + v[0] * SIGMA_1 + v[1] * SIGMA_2 + v[2] * SIGMA_3)


def density_to_bloch(rho) -> np.ndarray:
    """Bloch vector of a density matrix, s_i = Tr(rho sigma_i)."""
    m = validate_density_matrix(rho)
    return np.array([float(np.trace(m @ p).real) for p in PAULIS])


def validate_density_matrix(rho, tol: float = 1e-12) -> np.ndarray:
    """Check the density-matrix invariants and return the coerced matrix.

    Requires Hermiticity, unit trace and nonnegative spectrum, each within
    ``tol``.  Raises InvalidStateError otherwise.
    """
    m = np.asarray(rho, dtype=complex)
    if m.shape != (2, 2):
        raise InvalidStateError(f"density matrix must have shape (2, 2), got {m.shape}")
    if abs(m[1, 0] - np.conj(m[0, 1])) > tol or abs(m[0, 0].imag) > tol or abs(m[1, 1].imag) > tol:
        raise InvalidStateError("density matrix is not Hermitian")
    tr = m.trace()
    if abs(tr - 1.0) > tol:
        raise InvalidStateError(f"density matrix trace {tr:.6g} != 1")
    # Eigenvalues of a 2x2 Hermitian matrix from trace and determinant.
    half_tr = tr.real / 2.0
    det = np.linalg.det(m).real
    lam_min = half_tr - math.sqrt(max(half_tr * half_tr - det, 0.0))
    if lam_min < -tol:
        raise InvalidStateError(f"density matrix has negative eigenvalue {lam_min:.6g}")
    return m


def spectral_projection(axis: int, sign: int) -> np.ndarray:
    """Projector onto the +1 or -1 eigenspace of sigma_axis: (I +/- sigma_axis) / 2."""
    if axis not in (1, 2, 3):
        raise ValueError(f"axis must be 1, 2 or 3, got {axis}")
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    return 0.5 * (IDENTITY + sign * PAULIS[axis - 1])


def density_sqrt(rho) -> np.ndarray:
    """Principal square root of a 2x2 positive-semidefinite matrix.

    Uses the closed form sqrt(rho) = (rho + sqrt(det rho) I) / sqrt(tr rho + 2 sqrt(det rho)),
    valid for any PSD 2x2 matrix with positive trace.  The determinant is
    clamped at zero so that numerically defective pure states stay real.
    """
    m = np.asarray(rho, dtype=complex)
    det = max(np.linalg.det(m).real, 0.0)
    root_det = math.sqrt(det)
    denom = math.sqrt(m.trace().real + 2.0 * root_det)
    return (m + root_det * IDENTITY) / denom


def fidelity(rho, omega) -> float:
    """Fidelity F(rho, omega) = Tr sqrt(sqrt(rho) omega sqrt(rho)).

    Evaluated as sqrt(lam1) + sqrt(lam2) where lam1, lam2 are the eigenvalues
    of A = sqrt(rho) omega sqrt(rho), obtained in closed form from Tr A and
    det A and clamped at zero before the square roots.  The result is clipped
    to [0, 1].
    """
    root = density_sqrt(rho)
    a = root @ np.asarray(omega, dtype=complex) @ root
    half_tr = a.trace().real / 2.0
    det = np.linalg.det(a).real
    disc = math.sqrt(max(half_tr * half_tr - det, 0.0))
    lam1 = max(half_tr + disc, 0.0)
    lam2 = max(half_tr - disc, 0.0)
    return min(max(math.sqrt(lam1) + math.sqrt(lam2), 0.0), 1.0)


def fidelity_bloch(s, r) -> float:
    """Fidelity in Bloch coordinates, matching :func:`fidelity`.

    With t = sqrt(||r + s||^2 + (r.s)^2 - ||r||^2 ||s||^2) the two eigenvalues
    of A = sqrt(rho) omega sqrt(rho) are (1 + r.s +/- t) / 4, hence

        F = ( sqrt(1 + r.s + t) + sqrt(1 + r.s - t) ) / 2.

    The sign between the square roots must be a plus: the minus variant
    computes sqrt(lam1) - sqrt(lam2) and e.g. vanishes for two equal maximally
    mixed states.  Inputs slightly outside the ball are tolerated (all
    intermediate negatives are clamped) and the result is clipped to [0, 1],
    which extends the formula gracefully to defective estimates.
    """
    sv = as_bloch(s)
    rv = as_bloch(r)
    dot = float(sv @ rv)
    t_sq = float((sv + rv) @ (sv + rv)) + dot * dot - float(sv @ sv) * float(rv @ rv)
    t = math.sqrt(max(t_sq, 0.0))
    hi = max(1.0 + dot + t, 0.0)
    lo = max(1.0 + dot - t, 0.0)
    return min(max(0.5 * (math.sqrt(hi) + math.sqrt(lo)), 0.0), 1.0)


def hs_distance(rho, omega) -> float:
    """Hilbert-Schmidt distance d(rho, omega) = sqrt(Tr (rho - omega)^2)."""
    delta = np.asarray(rho, dtype=complex) - np.asarray(omega, dtype=complex)
    return math.sqrt(max(np.trace(delta @ delta).real, 0.0))


def bloch_hs_distance(s, r) -> float:
    """Hilbert-Schmidt distance in Bloch coordinates, ||s - r|| / sqrt(2).

    For qubits Tr (rho - omega)^2 = ||s - r||^2 / 2, so this matches
    :func:`hs_distance` exactly (the frequently quoted reduction without the
    1/sqrt(2) factor is :func:`bloch_euclidean_distance`).
    """
    return float(np.linalg.norm(as_bloch(s) - as_bloch(r))) / math.sqrt(2.0)


def bloch_euclidean_distance(s, r) -> float:
    """Plain Euclidean distance ||s - r|| between Bloch vectors.

    Equals sqrt(2) times the Hilbert-Schmidt distance; provided as a display
    convention for comparability with plots that use the unscaled reduction.
    """
    return float(np.linalg.norm(as_bloch(s) - as_bloch(r)))
