"""Fixed-size linear algebra for single qubits and qubit pairs.

Two-qubit operators live in the product basis ``|00>, |01>, |10>, |11>``
(first qubit is the most significant index).  Pure states are length-4
complex vectors, densities are 4x4 complex arrays.
"""
from __future__ import annotations

import numpy as np

from .errors import InvalidStateError, NonHermitianError, NonUnitaryError

SIGMA = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)
"""Pauli operators ``sigma_0 = I, sigma_1, sigma_2, sigma_3`` with sigma_3|0> = |0>."""

# PAULI_PAIRS[i, j] = sigma_i (x) sigma_j
PAULI_PAIRS = np.einsum("iab,jcd->ijacbd", SIGMA, SIGMA).reshape(4, 4, 4, 4)

PSI_PLUS = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
PSI_ONE_EXCITATION = np.array([0, 1, 1, 0], dtype=complex) / np.sqrt(2)


def ket(*amplitudes) -> np.ndarray:
    """Normalized two-qubit vector from four amplitudes."""
    psi = np.asarray(amplitudes, dtype=complex).reshape(4)
    return psi / np.linalg.norm(psi)


def projector(psi: np.ndarray) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


def validate_pure(psi, tol: float = 1e-12) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (4,):
        raise InvalidStateError(f"expected 4 amplitudes, got shape {psi.shape}")
    if abs(np.linalg.norm(psi) - 1.0) > tol:
        raise InvalidStateError(f"state norm {np.linalg.norm(psi)!r} != 1")
    return psi


def validate_density(rho, tol: float = 1e-12, psd_tol: float = 1e-10) -> np.ndarray:
    """Check and return a two-qubit density matrix.

    Raises :class:`InvalidStateError` unless ``rho`` is Hermitian and has unit
    trace (both to ``tol``) with smallest eigenvalue above ``-psd_tol``.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise InvalidStateError(f"expected a 4x4 matrix, got shape {rho.shape}")
    if np.abs(rho - rho.conj().T).max() > tol:
        raise InvalidStateError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1.0) > tol:
        raise InvalidStateError(f"trace {np.trace(rho).real!r} != 1")
    if np.linalg.eigvalsh(rho)[0] < -psd_tol:
        raise InvalidStateError("density matrix is not positive semidefinite")
    return rho


def hermitian_eigenvalues(m, tol: float = 1e-10) -> np.ndarray:
    """Ascending eigenvalues of a 2x2 or 4x4 Hermitian matrix."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] not in (2, 4):
        raise ValueError(f"expected a 2x2 or 4x4 matrix, got shape {m.shape}")
    if np.abs(m - m.conj().T).max() > tol:
        raise NonHermitianError("matrix is not Hermitian")
    return np.linalg.eigvalsh(m)


def partial_transpose(rho: np.ndarray) -> np.ndarray:
    """Transpose the second-qubit index.  Works on stacks ``(..., 4, 4)``."""
    rho = np.asarray(rho)
    lead = rho.shape[:-2]
    r = rho.reshape(lead + (2, 2, 2, 2))
    return np.swapaxes(r, -1, -3).reshape(lead + (4, 4))


def min_pt_eigenvalue(rho: np.ndarray) -> np.ndarray | float:
    """Smallest eigenvalue of the partial transpose (stack-aware).

    Negative exactly when the two-qubit state is entangled.
    """
    return np.linalg.eigvalsh(partial_transpose(rho))[..., 0]


def negativity(rho: np.ndarray) -> float:
    """``(||rho^Gamma||_1 - 1) / 2``, the summed magnitude of negative PT eigenvalues."""
    ev = np.linalg.eigvalsh(partial_transpose(rho))
    return float(-ev[ev < 0].sum())


def negativity_batch(rhos: np.ndarray) -> np.ndarray:
    ev = np.linalg.eigvalsh(partial_transpose(rhos))
    return -np.where(ev < 0, ev, 0.0).sum(axis=-1)


def is_unitary(u, tol: float = 1e-10) -> bool:
    u = np.asarray(u, dtype=complex)
    return u.shape == (2, 2) and np.abs(u.conj().T @ u - np.eye(2)).max() <= tol


def make_bell_like(u, v) -> np.ndarray:
    """Return ``(u (x) v)|psi_+>`` for single-qubit unitaries ``u`` and ``v``."""
    if not (is_unitary(u) and is_unitary(v)):
        raise NonUnitaryError("make_bell_like needs two 2x2 unitaries")
    return np.kron(np.asarray(u, dtype=complex), np.asarray(v, dtype=complex)) @ PSI_PLUS


def local_unitary(u, v, rho: np.ndarray) -> np.ndarray:
    w = np.kron(u, v)
    return w @ rho @ w.conj().T


def same_ray(psi, phi, tol: float = 1e-10) -> bool:
    """True when two unit vectors agree up to a global phase."""
    return abs(abs(np.vdot(psi, phi)) - 1.0) <= tol
