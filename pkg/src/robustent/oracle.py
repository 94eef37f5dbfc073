"""Brute-force checks of entanglement annihilation by pure-state sampling.

Pure two-qubit states are written ``(C (x) I)|psi_+>`` with
``C = U diag(sqrt(1 + sin a), sqrt(1 - sin a)) V``, so ``a = 0`` gives
maximally entangled states and ``a = pi/2`` product states.  Sampling can
refute entanglement annihilation but never prove it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.stats import qmc

from .channels import apply_pair_unchecked, as_ptm
from .qubit import PSI_PLUS, min_pt_eigenvalue, projector
from .unital import witness_family

REFUTE_TOL = -1e-10


@dataclass(frozen=True)
class PureStateSample:
    alpha: float
    u_params: tuple[float, float, float]
    v_params: tuple[float, float, float]
    state: np.ndarray = field(compare=False, repr=False)


@dataclass(frozen=True)
class SampledVerdict:
    """``ea_consistent`` is False as soon as one sample stays entangled."""

    ea_consistent: bool
    min_eigenvalue: float
    witness: PureStateSample | None


def _rz(x: float) -> np.ndarray:
    return np.diag([np.exp(-0.5j * x), np.exp(0.5j * x)])


def su2(a: float, b: float, c: float) -> np.ndarray:
    """``Rz(a) Ry(b) Rz(c)``."""
    ry = np.array([[np.cos(b / 2), -np.sin(b / 2)], [np.sin(b / 2), np.cos(b / 2)]])
    return _rz(a) @ ry @ _rz(c)


def _euler(u: np.ndarray) -> tuple[float, float, float]:
    # inverse of su2 up to a global phase
    u = u / np.sqrt(np.linalg.det(u))
    b = 2 * np.arctan2(abs(u[1, 0]), abs(u[0, 0]))
    s = -np.angle(u[0, 0]) if abs(u[0, 0]) > 1e-12 else 0.0
    d = np.angle(u[1, 0]) if abs(u[1, 0]) > 1e-12 else 0.0
    # s = (a + c) / 2, d = (a - c) / 2
    return float(s + d), float(b), float(s - d)


def state_from_params(alpha: float, u_params, v_params) -> np.ndarray:
    s = np.sin(alpha)
    c = su2(*u_params) @ np.diag([np.sqrt(1 + s), np.sqrt(max(1 - s, 0.0))]) @ su2(*v_params)
    return np.kron(c, np.eye(2)) @ PSI_PLUS


def sample_from_state(psi) -> PureStateSample:
    """Parameters ``(alpha, u, v)`` reproducing ``psi`` up to a global phase."""
    psi = np.asarray(psi, dtype=complex)
    m = np.sqrt(2) * psi.reshape(2, 2)
    w, sv, vh = np.linalg.svd(m)
    alpha = float(np.arcsin(np.clip((sv[0] ** 2 - sv[1] ** 2) / 2, 0.0, 1.0)))
    u_params, v_params = _euler(w), _euler(vh)
    return PureStateSample(alpha, u_params, v_params, state_from_params(alpha, u_params, v_params))


def _halton_params(n: int, seed: int) -> np.ndarray:
    engine = qmc.Halton(d=7, scramble=False)
    engine.fast_forward(seed)
    x = engine.random(n)
    alpha = x[:, 0] * np.pi / 2
    # Euler angles; b = arccos(1 - 2x) follows the Haar density on SU(2)
    u = np.stack([2 * np.pi * x[:, 1], np.arccos(1 - 2 * x[:, 2]), 2 * np.pi * x[:, 3]], axis=1)
    v = np.stack([2 * np.pi * x[:, 4], np.arccos(1 - 2 * x[:, 5]), 2 * np.pi * x[:, 6]], axis=1)
    return np.column_stack([alpha, u, v])


@lru_cache(maxsize=16)
def _samples(n: int, seed: int) -> tuple[PureStateSample, ...]:
    out = [sample_from_state(psi) for psi in witness_family()[:n]]
    for row in _halton_params(n - len(out), seed) if n > len(out) else []:
        a, u, v = float(row[0]), tuple(map(float, row[1:4])), tuple(map(float, row[4:7]))
        out.append(PureStateSample(a, u, v, state_from_params(a, u, v)))
    return tuple(out)


def sample_pure_states(n: int, seed: int = 0) -> list[PureStateSample]:
    """Deterministic low-discrepancy pure states, witness family first.

    The remaining entries come from a 7-dimensional Halton sequence over
    ``(alpha, u_params, v_params)``; ``seed`` shifts its starting index.
    """
    if n <= 0:
        raise ValueError("n must be positive")
    if seed < 0:
        raise ValueError("seed must be non-negative")
    return list(_samples(int(n), int(seed)))


def sample_states_array(n: int, seed: int = 0) -> np.ndarray:
    return np.array([s.state for s in _samples(int(n), int(seed))])


def ea_sampled_verdict(left, right, n: int = 2000, seed: int = 0) -> SampledVerdict:
    """Try to refute entanglement annihilation of ``left (x) right`` by sampling.

    The first sample (in sequence order) whose output has a partial-transpose
    eigenvalue below ``-1e-10`` is returned as the witness.
    """
    left, right = as_ptm(left), as_ptm(right)
    samples = _samples(int(n), int(seed))
    rhos = np.array([projector(s.state) for s in samples])
    mins = min_pt_eigenvalue(apply_pair_unchecked(left, right, rhos))
    bad = np.flatnonzero(mins < REFUTE_TOL)
    if bad.size:
        return SampledVerdict(False, float(mins.min()), samples[int(bad[0])])
    return SampledVerdict(True, float(mins.min()), None)


__all__ = [
    "PureStateSample",
    "SampledVerdict",
    "sample_pure_states",
    "sample_states_array",
    "sample_from_state",
    "state_from_params",
    "ea_sampled_verdict",
]
