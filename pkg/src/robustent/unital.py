"""Entanglement annihilation for pairs of local unital qubit channels.

A pair ``diag(1, lam) (x) diag(1, lam')`` destroys all entanglement exactly
when every ``|lam_i|, |lam'_i| <= 1`` and ``lam @ P @ lam' <= 1`` for each of
the 48 signed 3x3 permutation matrices ``P``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import bisect

from .channels import DiagonalChannel, apply_pair_unchecked, pauli_channel
from .errors import (
    AlreadyAnnihilatingError,
    NoThresholdError,
    NotPositiveError,
    NotUnitalError,
)
from .qubit import SIGMA, min_pt_eigenvalue, projector, same_ray

EA_TOL = 1e-12

LambdaPath = Callable[[float], Sequence[float]]


@dataclass(frozen=True, order=True)
class SignedPermutation:
    """Signed permutation; ``matrix[i, perm[i]] = signs[i]`` (0-based ``perm``)."""

    perm: tuple[int, int, int]
    signs: tuple[int, int, int]

    @property
    def matrix(self) -> np.ndarray:
        p = np.zeros((3, 3))
        for i, (j, s) in enumerate(zip(self.perm, self.signs)):
            p[i, j] = s
        return p


SIGNED_PERMUTATIONS: tuple[SignedPermutation, ...] = tuple(
    sorted(
        SignedPermutation(perm, signs)
        for perm in itertools.permutations(range(3))
        for signs in itertools.product((-1, 1), repeat=3)
    )
)
_PERM_INDEX = np.array([p.perm for p in SIGNED_PERMUTATIONS])
_PERM_SIGNS = np.array([p.signs for p in SIGNED_PERMUTATIONS], dtype=float)


@dataclass(frozen=True)
class EaVerdict:
    annihilating: bool
    max_value: float
    argmax: SignedPermutation


def _pairing_values(lam, lam_prime) -> np.ndarray:
    lam = np.asarray(lam, dtype=float)
    lp = np.asarray(lam_prime, dtype=float)
    terms = lam * _PERM_SIGNS * lp[_PERM_INDEX]
    return terms[:, 0] + terms[:, 1] + terms[:, 2]


def _within_unit_box(lam, lam_prime) -> bool:
    return bool(max(np.abs(lam).max(), np.abs(lam_prime).max()) <= 1 + EA_TOL)


def signed_permutation_max(lam, lam_prime) -> EaVerdict:
    """Exhaustive maximum of ``lam @ P @ lam_prime`` over all 48 signed permutations.

    Ties go to the lexicographically smallest ``(perm, signs)``.
    """
    values = _pairing_values(lam, lam_prime)
    best = values.max()
    k = int(np.flatnonzero(values == best)[0])
    annihilating = best <= 1 + EA_TOL and _within_unit_box(lam, lam_prime)
    return EaVerdict(bool(annihilating), float(best), SIGNED_PERMUTATIONS[k])


def _sorted_pairing(lam, lam_prime) -> EaVerdict:
    # rearrangement inequality: pair entries of equal rank, all signs +1
    lam = np.asarray(lam, dtype=float)
    lp = np.asarray(lam_prime, dtype=float)
    rank = np.argsort(np.argsort(-lam, kind="stable"), kind="stable")
    perm = tuple(int(i) for i in np.argsort(-lp, kind="stable")[rank])
    terms = lam * lp[list(perm)]
    value = terms[0] + terms[1] + terms[2]
    annihilating = value <= 1 + EA_TOL and _within_unit_box(lam, lp)
    return EaVerdict(bool(annihilating), float(value), SignedPermutation(perm, (1, 1, 1)))


def is_ea_pair(left: DiagonalChannel, right: DiagonalChannel) -> EaVerdict:
    """Entanglement-annihilation verdict for two unital channels in diagonal form."""
    for c in (left, right):
        if max(abs(v) for v in c.shift) > EA_TOL:
            raise NotUnitalError(f"channel with shift {c.shift} is not unital")
        if max(abs(v) for v in c.lam) > 1 + EA_TOL:
            raise NotPositiveError(f"lambda {c.lam} leaves the unit cube")
    if min(left.lam) >= 0 and min(right.lam) >= 0:
        return _sorted_pairing(left.lam, right.lam)
    return signed_permutation_max(left.lam, right.lam)


def _eb_time(left: LambdaPath, right: LambdaPath, horizon: float, steps: int) -> float:
    ts = np.linspace(0.0, horizon, steps + 1)
    for t in ts:
        if np.abs(left(t)).sum() <= 1 and np.abs(right(t)).sum() <= 1:
            return float(t)
    return horizon


def last_crossing(
    excess: Callable[[float], float],
    horizon: float,
    steps: int = 1000,
    xtol: float = 1e-12,
    values: np.ndarray | None = None,
) -> float:
    """Last time where ``excess`` goes from positive to non-positive.

    ``excess`` is scanned on ``steps`` uniform intervals of ``[0, horizon]``
    and the last bracketing interval is bisected.  Requires ``excess(0) > 0``
    and ``excess(horizon) <= 0``.
    """
    ts = np.linspace(0.0, horizon, steps + 1)
    g = np.array([excess(t) for t in ts]) if values is None else np.asarray(values)
    k = int(np.flatnonzero(g > 0)[-1])
    if g[k + 1] == 0.0:
        return float(ts[k + 1])
    return float(bisect(excess, ts[k], ts[k + 1], xtol=xtol, maxiter=200))


def ea_threshold_time(
    left: LambdaPath,
    right: LambdaPath,
    horizon: float,
    steps: int = 1000,
    xtol: float = 1e-12,
) -> float:
    """Time after which ``Upsilon(t) (x) Upsilon'(t)`` stays entanglement annihilating.

    ``left`` and ``right`` map a time to the three diagonal eigenvalues of
    each local unital channel.  The horizon is clipped to the first grid time
    where both channels are entanglement breaking, since the pair is
    annihilating from there on.
    """
    if horizon <= 0:
        raise ValueError("horizon must be positive")

    def excess(t):
        return signed_permutation_max(left(t), right(t)).max_value - 1.0

    if excess(0.0) <= 0:
        raise AlreadyAnnihilatingError("pair already annihilates entanglement at t = 0")
    horizon = _eb_time(left, right, horizon, steps) or horizon
    if excess(horizon) > 0:
        raise NoThresholdError(f"still not annihilating at t = {horizon}")
    return last_crossing(excess, horizon, steps, xtol)


_EIGENBASES = {
    3: (np.array([1, 0], dtype=complex), np.array([0, 1], dtype=complex)),
    1: (np.array([1, 1], dtype=complex) / np.sqrt(2), np.array([1, -1], dtype=complex) / np.sqrt(2)),
    2: (np.array([1, 1j], dtype=complex) / np.sqrt(2), np.array([1, -1j], dtype=complex) / np.sqrt(2)),
}


def _build_witness_family() -> tuple[np.ndarray, ...]:
    # (phi chi + e^{i theta} phi_perp chi_perp)/sqrt(2) over Pauli eigenbases;
    # both orderings of the second basis and four phases reach all 24 states
    # whose correlation matrix is a signed permutation.
    family: list[np.ndarray] = []
    for a in (3, 1, 2):
        for b in (3, 1, 2):
            phi, phi_perp = _EIGENBASES[a]
            for chi, chi_perp in (_EIGENBASES[b], _EIGENBASES[b][::-1]):
                for phase in (1.0, 1j, -1.0, -1j):
                    psi = (np.kron(phi, chi) + phase * np.kron(phi_perp, chi_perp)) / np.sqrt(2)
                    if not any(same_ray(psi, f) for f in family):
                        family.append(psi)
    return tuple(family)


_WITNESS_FAMILY = _build_witness_family()


def witness_family() -> list[np.ndarray]:
    """Bell-like states built from Pauli eigenbases, deduplicated up to phase.

    The first member is ``|psi_+> = (|00> + |11>)/sqrt(2)``.
    """
    return [psi.copy() for psi in _WITNESS_FAMILY]


def witness_min_pt_eigenvalues(left_ptm, right_ptm) -> np.ndarray:
    """Smallest PT eigenvalue of each witness output under a channel pair."""
    rhos = np.array([projector(psi) for psi in _WITNESS_FAMILY])
    return min_pt_eigenvalue(apply_pair_unchecked(left_ptm, right_ptm, rhos))


_ONE_EXCITATION = np.array([0, 1, 1, 0], dtype=complex) / np.sqrt(2)


def robust_unital_state(left: LambdaPath, right: LambdaPath, tau: float) -> np.ndarray:
    """Maximally entangled witness state that stays entangled longest.

    Every witness is pushed through the unital pair at ``tau`` and the one
    with the most negative partial-transpose eigenvalue wins.  Exact ties
    prefer ``(|01> + |10>)/sqrt(2)``, then family order.
    """
    mins = witness_min_pt_eigenvalues(pauli_channel(left(tau)), pauli_channel(right(tau)))
    best = mins.min()
    tied = np.flatnonzero(mins <= best + 1e-12)
    for k in tied:
        if same_ray(_WITNESS_FAMILY[k], _ONE_EXCITATION):
            return _WITNESS_FAMILY[k].copy()
    return _WITNESS_FAMILY[int(tied[0])].copy()


__all__ = [
    "SignedPermutation",
    "SIGNED_PERMUTATIONS",
    "EaVerdict",
    "signed_permutation_max",
    "is_ea_pair",
    "ea_threshold_time",
    "last_crossing",
    "witness_family",
    "witness_min_pt_eigenvalues",
    "robust_unital_state",
    "SIGMA",
]
