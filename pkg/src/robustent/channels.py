"""Qubit channels in the Pauli transfer matrix (PTM) picture.

A channel is stored as a real 4x4 array ``M`` with ``M[i, j] = tr[s_i Phi(s_j)] / 2``
over ``(I, s1, s2, s3)``.  Row 0 equal to ``(1, 0, 0, 0)`` means trace
preserving; column 0 below the diagonal holds the shift vector ``t`` and the
lower-right 3x3 block acts on Bloch vectors.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .errors import (
    IncompleteKrausError,
    InvalidChannelError,
    InvalidStateError,
    NotCompletelyPositiveError,
)
from .qubit import PAULI_PAIRS, SIGMA, min_pt_eigenvalue

IDENTITY_PTM = np.eye(4)
FULL_DEPOLARIZING_PTM = np.diag([1.0, 0.0, 0.0, 0.0])


@dataclass(frozen=True)
class DiagonalChannel:
    """Canonical form ``diag(1, lambda)`` plus shift ``t`` in column 0."""

    lam: tuple[float, float, float]
    shift: tuple[float, float, float] = (0.0, 0.0, 0.0)

    def __post_init__(self):
        object.__setattr__(self, "lam", tuple(float(v) for v in self.lam))
        object.__setattr__(self, "shift", tuple(float(v) for v in self.shift))
        if len(self.lam) != 3 or len(self.shift) != 3:
            raise InvalidChannelError("lambda and shift need three entries each")

    @property
    def unital(self) -> bool:
        return not any(self.shift)

    def ptm(self) -> np.ndarray:
        m = np.diag([1.0, *self.lam])
        m[1:, 0] = self.shift
        return m


@dataclass(frozen=True)
class ChannelClass:
    positive: bool
    completely_positive: bool
    entanglement_breaking: bool
    unital: bool


def as_ptm(m, tol: float = 1e-12) -> np.ndarray:
    """Validate a trace-preserving transfer matrix and return it as float array."""
    m = np.asarray(m, dtype=float)
    if m.shape != (4, 4):
        raise InvalidChannelError(f"transfer matrix must be 4x4, got {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InvalidChannelError("transfer matrix has non-finite entries")
    if np.abs(m[0] - [1.0, 0.0, 0.0, 0.0]).max() > tol:
        raise InvalidChannelError("row 0 must be (1, 0, 0, 0) for a trace-preserving map")
    return m


def ptm_of_map(kraus) -> np.ndarray:
    """PTM of ``X -> sum_a K_a X K_a^dag`` with no completeness check.

    Used for the single-operator maps ``Phi_A[X] = A X A^dag`` that appear in
    the Sinkhorn factorization and need not preserve trace.
    """
    ks = np.asarray(kraus, dtype=complex).reshape(-1, 2, 2)
    # images[a, j] = K_a s_j K_a^dag
    images = np.einsum("axy,jyz,awz->ajxw", ks, SIGMA, ks.conj())
    m = 0.5 * np.einsum("iyx,ajxy->ij", SIGMA, images)
    return m.real


def ptm_of_operator(a) -> np.ndarray:
    return ptm_of_map([a])


def ptm_from_kraus(kraus, tol: float = 1e-10) -> np.ndarray:
    """PTM of a complete (trace-preserving) Kraus set."""
    ks = np.asarray(kraus, dtype=complex).reshape(-1, 2, 2)
    completeness = np.einsum("ayx,ayz->xz", ks.conj(), ks)
    if np.abs(completeness - np.eye(2)).max() > tol:
        raise IncompleteKrausError("sum of K^dag K differs from the identity")
    m = ptm_of_map(ks)
    m[0] = [1.0, 0.0, 0.0, 0.0]
    return m


def pauli_kraus_weights(lam) -> np.ndarray:
    """Weights ``q`` with ``Phi[X] = sum_j q_j s_j X s_j`` for the unital ``diag(1, lam)``."""
    l1, l2, l3 = (float(v) for v in lam)
    q = 0.25 * np.array(
        [
            1 + l1 + l2 + l3,
            1 + l1 - l2 - l3,
            1 - l1 + l2 - l3,
            1 - l1 - l2 + l3,
        ]
    )
    if q.min() < -1e-12:
        raise NotCompletelyPositiveError(f"negative Pauli weight for lambda={tuple(lam)}")
    return q


def pauli_kraus(lam) -> list[np.ndarray]:
    q = np.clip(pauli_kraus_weights(lam), 0.0, None)
    return [np.sqrt(qj) * SIGMA[j] for j, qj in enumerate(q)]


def apply_map(m, x) -> np.ndarray:
    """Image of a 2x2 operator under the map with transfer matrix ``m``."""
    coeffs = np.einsum("jab,ba->j", SIGMA, np.asarray(x, dtype=complex))
    out = np.asarray(m) @ coeffs
    return 0.5 * np.einsum("j,jab->ab", out, SIGMA)


def choi_from_ptm(m) -> np.ndarray:
    """``(Id (x) Phi)[|psi_+><psi_+|]``, unit trace for trace-preserving maps."""
    m = np.asarray(m, dtype=float)
    # |psi_+><psi_+| = 1/4 sum_j s_j^T (x) s_j
    return 0.25 * np.einsum("ij,jiab->ab", m, _TRANSPOSED_PAIRS)


# _TRANSPOSED_PAIRS[j, i] = s_j^T (x) s_i
_TRANSPOSED_PAIRS = np.einsum(
    "jba,icd->jiacbd", SIGMA, SIGMA
).reshape(4, 4, 4, 4)


def ptm_from_choi(choi) -> np.ndarray:
    """Inverse of :func:`choi_from_ptm`."""
    choi = np.asarray(choi, dtype=complex)
    m = np.einsum("jiba,ab->ij", _TRANSPOSED_PAIRS, choi)
    return m.real


def kraus_from_ptm(m, cutoff: float = 1e-13) -> list[np.ndarray]:
    """Kraus operators from the eigendecomposition of the Choi matrix."""
    choi = choi_from_ptm(m)
    w, v = np.linalg.eigh(choi)
    if w[0] < -1e-10:
        raise NotCompletelyPositiveError("Choi matrix has a negative eigenvalue")
    ops = []
    for wk, vk in zip(w, v.T):
        if wk > cutoff:
            # Choi = 1/2 sum_kl |k><l| (x) Phi(|k><l|), vec index = (k, out)
            ops.append(np.sqrt(2 * wk) * vk.reshape(2, 2).T)
    return ops


def compose(outer, inner) -> np.ndarray:
    """Transfer matrix of ``outer o inner``."""
    return np.asarray(outer, dtype=float) @ np.asarray(inner, dtype=float)


def dual(m) -> np.ndarray:
    """Transfer matrix of the Hilbert-Schmidt dual (a plain transpose in the Pauli basis)."""
    return np.asarray(m, dtype=float).T


def special_svd(t) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Factor a real 3x3 matrix as ``q_u @ diag(s) @ q_v`` with ``det q_u = det q_v = +1``.

    ``|s|`` is sorted in descending order and only ``s[2]`` may be negative.
    Diagonal input is handled exactly (no rotation beyond a permutation).
    """
    t = np.asarray(t, dtype=float)
    if np.abs(t - np.diag(np.diag(t))).max() == 0.0:
        d = np.diag(t)
        order = np.argsort(-np.abs(d), kind="stable")
        perm = np.eye(3)[:, order]
        signs = np.where(d[order] < 0, -1.0, 1.0)
        u = perm * signs
        s = np.abs(d[order])
        vt = perm.T
    else:
        u, s, vt = np.linalg.svd(t)
    u = u.copy()
    vt = vt.copy()
    s = s.astype(float)
    if np.linalg.det(u) < 0:
        u[:, 2] *= -1
        s[2] *= -1
    if np.linalg.det(vt) < 0:
        vt[2, :] *= -1
        s[2] *= -1
    return u, s, vt


def canonical_form(m) -> tuple[DiagonalChannel, np.ndarray, np.ndarray]:
    """Rotate input and output Bloch frames so the 3x3 block becomes diagonal.

    Returns ``(channel, rotation_out, rotation_in)`` with
    ``m = diag(1, rotation_out) @ channel.ptm() @ diag(1, rotation_in)``.
    """
    m = as_ptm(m)
    q_out, lam, q_in = special_svd(m[1:, 1:])
    shift = q_out.T @ m[1:, 0]
    return DiagonalChannel(tuple(lam), tuple(shift)), q_out, q_in


def embed_rotation(q) -> np.ndarray:
    r = np.eye(4)
    r[1:, 1:] = q
    return r


def unitary_from_rotation(q) -> np.ndarray:
    """A 2x2 unitary ``U`` whose conjugation channel has PTM ``diag(1, q)``."""
    q = np.asarray(q, dtype=float)
    # quaternion from the rotation matrix, largest-component branch for stability
    tr = np.trace(q)
    cands = [1 + tr, 1 + q[0, 0] - q[1, 1] - q[2, 2],
             1 - q[0, 0] + q[1, 1] - q[2, 2], 1 - q[0, 0] - q[1, 1] + q[2, 2]]
    k = int(np.argmax(cands))
    r = np.sqrt(max(cands[k], 0.0)) * 2.0
    if k == 0:
        w, x, y, z = r / 4, (q[2, 1] - q[1, 2]) / r, (q[0, 2] - q[2, 0]) / r, (q[1, 0] - q[0, 1]) / r
    elif k == 1:
        w, x, y, z = (q[2, 1] - q[1, 2]) / r, r / 4, (q[0, 1] + q[1, 0]) / r, (q[0, 2] + q[2, 0]) / r
    elif k == 2:
        w, x, y, z = (q[0, 2] - q[2, 0]) / r, (q[0, 1] + q[1, 0]) / r, r / 4, (q[1, 2] + q[2, 1]) / r
    else:
        w, x, y, z = (q[1, 0] - q[0, 1]) / r, (q[0, 2] + q[2, 0]) / r, (q[1, 2] + q[2, 1]) / r, r / 4
    return w * SIGMA[0] - 1j * (x * SIGMA[1] + y * SIGMA[2] + z * SIGMA[3])


def ellipsoid_slack(c: DiagonalChannel) -> float:
    """``1 - sum_j t_j^2 / (1 - |lambda_j|)^2``; negative outside the ellipsoid.

    A term with ``|lambda_j| = 1`` counts as zero when ``t_j = 0`` and makes the
    slack ``-inf`` otherwise.
    """
    total = 0.0
    for lj, tj in zip(c.lam, c.shift):
        gap = 1.0 - abs(lj)
        if gap <= 0.0:
            if tj != 0.0:
                return -np.inf
            continue
        total += tj * tj / (gap * gap)
    return 1.0 - total


def fibonacci_sphere(n: int) -> np.ndarray:
    i = np.arange(n) + 0.5
    z = 1.0 - 2.0 * i / n
    r = np.sqrt(1.0 - z * z)
    phi = np.pi * (1.0 + np.sqrt(5.0)) * i
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


_SPHERE_GRID = fibonacci_sphere(10_000)


def max_output_bloch_norm(c: DiagonalChannel) -> float:
    """Largest ``|Lambda r + t|`` over unit Bloch vectors (grid scan plus local polish)."""
    lam = np.asarray(c.lam)
    t = np.asarray(c.shift)
    norms = np.linalg.norm(_SPHERE_GRID * lam + t, axis=1)
    r0 = _SPHERE_GRID[int(np.argmax(norms))]
    theta0 = np.arccos(np.clip(r0[2], -1, 1))
    phi0 = np.arctan2(r0[1], r0[0])

    def neg_norm(p):
        r = np.array([np.sin(p[0]) * np.cos(p[1]), np.sin(p[0]) * np.sin(p[1]), np.cos(p[0])])
        return -np.linalg.norm(lam * r + t)

    res = minimize(neg_norm, [theta0, phi0], method="Nelder-Mead",
                   options={"xatol": 1e-12, "fatol": 1e-15})
    return max(float(norms.max()), -float(res.fun))


def classify(c: DiagonalChannel) -> ChannelClass:
    lam = np.asarray(c.lam)
    if c.unital:
        l1, l2, l3 = lam
        positive = bool(np.all(np.abs(lam) <= 1 + 1e-12))
        cp = (1 + l3 + 1e-12 >= abs(l1 + l2)) and (1 - l3 + 1e-12 >= abs(l1 - l2))
        eb = cp and np.abs(lam).sum() <= 1 + 1e-12
        return ChannelClass(positive or cp, bool(cp), bool(eb), True)
    choi = choi_from_ptm(c.ptm())
    cp = bool(np.linalg.eigvalsh(choi)[0] >= -1e-12)
    eb = cp and bool(min_pt_eigenvalue(choi) >= -1e-12)
    positive = (
        bool(np.all(np.abs(lam) <= 1 + 1e-12))
        and ellipsoid_slack(c) >= -1e-9
        and max_output_bloch_norm(c) <= 1 + 1e-9
    )
    return ChannelClass(positive or cp, cp, eb, False)


def bloch_coefficients(rho) -> np.ndarray:
    """``R[i, j] = tr[(s_i (x) s_j) rho]`` for a density or a stack of densities."""
    return np.einsum("ijab,...ba->...ij", PAULI_PAIRS, np.asarray(rho)).real


def from_bloch_coefficients(r) -> np.ndarray:
    return 0.25 * np.einsum("...ij,ijab->...ab", np.asarray(r), PAULI_PAIRS)


def apply_pair_unchecked(left, right, rho) -> np.ndarray:
    """``(Phi_left (x) Phi_right)[rho]`` with no output validation; stack-aware."""
    r = bloch_coefficients(rho)
    out = np.asarray(left) @ r @ np.swapaxes(np.asarray(right), -1, -2)
    return from_bloch_coefficients(out)


def apply_pair(left, right, rho) -> np.ndarray:
    """Apply the local pair ``Phi_left (x) Phi_right`` to a two-qubit density."""
    out = apply_pair_unchecked(as_ptm(left), as_ptm(right), rho)
    if np.linalg.eigvalsh(out)[0] < -1e-8:
        raise InvalidStateError("output is not positive; is one channel not completely positive?")
    return out


def pauli_channel(lam) -> np.ndarray:
    return np.diag([1.0, *map(float, lam)])


__all__ = [
    "DiagonalChannel",
    "ChannelClass",
    "as_ptm",
    "ptm_of_map",
    "ptm_of_operator",
    "ptm_from_kraus",
    "pauli_kraus_weights",
    "pauli_kraus",
    "apply_map",
    "choi_from_ptm",
    "ptm_from_choi",
    "kraus_from_ptm",
    "compose",
    "dual",
    "special_svd",
    "canonical_form",
    "embed_rotation",
    "unitary_from_rotation",
    "ellipsoid_slack",
    "max_output_bloch_norm",
    "classify",
    "apply_pair",
    "apply_pair_unchecked",
    "bloch_coefficients",
    "from_bloch_coefficients",
    "pauli_channel",
]
