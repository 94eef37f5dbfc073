"""Time-dependent local noise, entanglement lifetimes and robust initial states.

Noise families give the transfer matrix ``M(t)`` of a single-qubit dynamical
map.  For generalized amplitude damping (GAD) ``|0>`` carries the
equilibrium population ``w`` and everything about the Sinkhorn reduction is
available in closed form; other pairs go through :func:`decompose`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.linalg import fractional_matrix_power

from .channels import DiagonalChannel, apply_pair_unchecked
from .errors import (
    InvalidChannelError,
    NeverAnnihilatingError,
    OutOfRangeError,
    OutOfTableError,
    StillEntangledError,
)
from .qubit import negativity_batch, projector, validate_pure
from .sinkhorn import decompose
from .unital import ea_threshold_time, last_crossing, robust_unital_state

GAD = "gad"
INF_TEMP_AD = "inf_temp_ad"
DEPOLARIZING = "depolarizing"
TABULATED = "tabulated"
KINDS = (GAD, INF_TEMP_AD, DEPOLARIZING, TABULATED)

NEGATIVITY_ZERO = 1e-12
SILVER = np.sqrt(2.0) + 1.0


@dataclass(frozen=True)
class NoiseFamily:
    """One-parameter family of qubit channels ``Phi(t)`` with ``Phi(0) = Id``.

    ``table`` is only used by the tabulated kind: a pair ``(times, ptms)``
    with increasing times and matching ``(n, 4, 4)`` transfer matrices.
    """

    kind: str
    gamma: float = 1.0
    w: float = 0.5
    table: tuple[np.ndarray, np.ndarray] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidChannelError(f"unknown noise family {self.kind!r}")
        if self.kind == TABULATED:
            if self.table is None:
                raise InvalidChannelError("tabulated family needs a table")
            times, ptms = self.table
            times = np.asarray(times, dtype=float)
            ptms = np.asarray(ptms, dtype=float)
            if times.ndim != 1 or ptms.shape != (len(times), 4, 4) or len(times) < 2:
                raise InvalidChannelError("table must hold at least two (t, 4x4) rows")
            if np.any(np.diff(times) <= 0):
                raise InvalidChannelError("table times must increase")
            object.__setattr__(self, "table", (times, ptms))
            return
        if not self.gamma > 0:
            raise OutOfRangeError(f"rate gamma = {self.gamma} must be positive")
        if self.kind == GAD and not 0 < self.w < 1:
            raise OutOfRangeError(f"GAD needs 0 < w < 1, got w = {self.w}")

    @classmethod
    def gad(cls, gamma: float, w: float) -> "NoiseFamily":
        return cls(GAD, gamma, w)

    @classmethod
    def inf_temp_ad(cls, gamma: float) -> "NoiseFamily":
        return cls(INF_TEMP_AD, gamma)

    @classmethod
    def depolarizing(cls, gamma: float) -> "NoiseFamily":
        return cls(DEPOLARIZING, gamma)

    @classmethod
    def tabulated(cls, times, ptms) -> "NoiseFamily":
        return cls(TABULATED, table=(times, ptms))


@dataclass(frozen=True)
class LifetimeReport:
    tau: float
    method: str
    state_used: np.ndarray = field(compare=False, repr=False)


def transfer_series(f: NoiseFamily, ts) -> np.ndarray:
    """Transfer matrices ``M(t)`` for an array of times, shape ``(n, 4, 4)``."""
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    if np.any(ts < 0):
        raise OutOfRangeError("time must be non-negative")
    if f.kind == TABULATED:
        times, ptms = f.table
        if ts.min() < times[0] or ts.max() > times[-1]:
            raise OutOfTableError(f"t outside table range [{times[0]}, {times[-1]}]")
        flat = ptms.reshape(len(times), 16)
        cols = [np.interp(ts, times, flat[:, k]) for k in range(16)]
        return np.stack(cols, axis=-1).reshape(len(ts), 4, 4)
    out = np.zeros((len(ts), 4, 4))
    out[:, 0, 0] = 1.0
    e1 = np.exp(-f.gamma * ts)
    if f.kind == DEPOLARIZING:
        out[:, 1, 1] = out[:, 2, 2] = out[:, 3, 3] = e1
        return out
    e2 = np.exp(-2 * f.gamma * ts)
    out[:, 1, 1] = out[:, 2, 2] = e1
    out[:, 3, 3] = e2
    if f.kind == GAD:
        out[:, 3, 0] = (2 * f.w - 1) * -np.expm1(-2 * f.gamma * ts)
    return out


def transfer_at(f: NoiseFamily, t: float) -> np.ndarray:
    """Transfer matrix of the family at time ``t``."""
    return transfer_series(f, [t])[0]


def _require_gad(f: NoiseFamily) -> None:
    if f.kind != GAD:
        raise InvalidChannelError(f"expected a GAD family, got {f.kind!r}")


def gad_channel(f: NoiseFamily, t: float) -> DiagonalChannel:
    _require_gad(f)
    e1, e2 = np.exp(-f.gamma * t), np.exp(-2 * f.gamma * t)
    return DiagonalChannel((e1, e1, e2), (0.0, 0.0, (2 * f.w - 1) * -np.expm1(-2 * f.gamma * t)))


def gad_reduced_lambda(f: NoiseFamily, t: float) -> float:
    """``lambda~_1(t) = lambda~_2(t)`` of the unital part; ``lambda~_3 = lambda~_1^2``."""
    _require_gad(f)
    w = f.w
    decay = -np.expm1(-2 * f.gamma * t)
    e2 = np.exp(-2 * f.gamma * t)
    denom = np.sqrt(w * (1 - w)) * decay + np.sqrt((1 - w * decay) * (w + e2 * (1 - w)))
    return float(np.exp(-f.gamma * t) / denom)


def _gad_brackets(f: NoiseFamily, t: float) -> tuple[float, float]:
    # (w[1 - w D], (1-w)[1 - (1-w) D]) with D = 1 - e^{-2 gamma t}
    w = f.w
    decay = -np.expm1(-2 * f.gamma * t)
    return w * (1 - w * decay), (1 - w) * (1 - (1 - w) * decay)


def gad_scaling_B(f: NoiseFamily, t: float) -> np.ndarray:
    """Diagonal input scaling ``B(t)`` with largest entry 1.

    ``B ~ diag((w[1 - w D])^(1/4), ((1-w)[1 - (1-w) D])^(1/4))``, ``D = 1 - e^{-2 gamma t}``.
    """
    ground, excited = _gad_brackets(f, t)
    d = np.array([ground, excited]) ** 0.25
    return np.diag(d / d.max()).astype(complex)


def _silver_u(f: NoiseFamily) -> float:
    u = SILVER * f.w * (1 - f.w)
    if u <= 0:
        raise NeverAnnihilatingError("w(1 - w) underflows to zero")
    return u


def gad_tau_tilde(f: NoiseFamily) -> float:
    """Maximal entanglement lifetime under identical GAD on both qubits."""
    _require_gad(f)
    ku = _silver_u(f)
    root = np.sqrt(1 + 8 * ku)
    # 4ku / (1 + 4ku - root) rationalized to avoid cancellation at small w
    return float(np.log((1 + 4 * ku + root) / (4 * ku)) / (2 * f.gamma))


def gad_tau_bell(f: NoiseFamily) -> float:
    """Entanglement lifetime of ``|psi_+>`` under identical GAD."""
    _require_gad(f)
    s = np.sqrt(2 * f.w * (1 - f.w))
    return float(np.log((1 + s) / s) / (2 * f.gamma))


def gad_ea_time(f: NoiseFamily) -> float:
    """Time from which ``Phi(t) (x) Phi(t)`` annihilates all entanglement.

    Solves ``1 - e^{-2 gamma t} = (sqrt(1 + 8ku) - 1) / (4ku)``, ``k = sqrt(2) + 1``,
    ``u = w(1 - w)``.
    """
    _require_gad(f)
    ku = _silver_u(f)
    root = np.sqrt(1 + 8 * ku)
    rhs = 2 / (root + 1)
    if rhs >= 1:
        raise NeverAnnihilatingError("threshold 1 - e^{-2 gamma t} >= 1 is never reached")
    # e^{-2 gamma t} = 1 - rhs = 8ku / (root + 1)^2
    return float(np.log((root + 1) ** 2 / (8 * ku)) / (2 * f.gamma))


def gad_robust_state(f: NoiseFamily) -> np.ndarray:
    """Ultimately robust input for identical GAD noise on both qubits.

    ``(B (x) B)|psi_+>`` at ``tau~``: weight ``w[1 - w D]`` on ``|00>`` and
    ``(1-w)[1 - (1-w) D]`` on ``|11>`` (squared amplitudes, up to
    normalization), ``D = 1 - e^{-2 gamma tau~}``.
    """
    ground, excited = _gad_brackets(f, gad_tau_tilde(f))
    psi = np.array([np.sqrt(ground), 0, 0, np.sqrt(excited)], dtype=complex)
    return psi / np.linalg.norm(psi)


def _check_t0(t0: float, tau: float) -> None:
    if not -1e-12 <= t0 <= tau * (1 + 1e-12):
        raise OutOfRangeError(f"t0 = {t0} outside [0, {tau}]")


def interpolation_path(
    left: NoiseFamily,
    right: NoiseFamily | None = None,
    horizon: float | None = None,
) -> tuple[float, Callable[[float], np.ndarray]]:
    """``(tau~, t0 -> state)`` for the interpolating family of inputs.

    For identical GAD noise (``right`` omitted or equal) the family is in
    closed form and runs from ``|psi_+>`` at ``t0 = 0`` to
    :func:`gad_robust_state` at ``t0 = tau~``.  Otherwise it is
    ``[B(tau~) (x) B'(tau~)]^(t0/tau~)|psi_Upsilon>`` with the reduction
    computed numerically up to ``horizon``.
    """
    if right is None or (right == left and left.kind == GAD):
        tau = gad_tau_tilde(left)
        ground, excited = _gad_brackets(left, tau)

        def state(t0: float) -> np.ndarray:
            _check_t0(t0, tau)
            s = t0 / (2 * tau)
            psi = np.array([ground**s, 0, 0, excited**s], dtype=complex)
            return psi / np.linalg.norm(psi)

        return tau, state
    if horizon is None:
        raise ValueError("a horizon is needed for a general pair")
    tau, b_left, b_right, psi_u = _pair_threshold(left, right, horizon)
    b = np.kron(b_left, b_right)

    def state(t0: float) -> np.ndarray:
        _check_t0(t0, tau)
        psi = fractional_matrix_power(b, min(t0, tau) / tau) @ psi_u
        return psi / np.linalg.norm(psi)

    return tau, state


def interpolated_state(
    left: NoiseFamily,
    t0: float,
    right: NoiseFamily | None = None,
    horizon: float | None = None,
) -> np.ndarray:
    """Input prepared for high entanglement at time ``t0 <= tau~``; see :func:`interpolation_path`."""
    return interpolation_path(left, right, horizon)[1](t0)


def pair_outputs(left: NoiseFamily, right: NoiseFamily, psi, ts) -> np.ndarray:
    """Output densities ``(Phi(t) (x) Phi'(t))[|psi><psi|]`` for each time."""
    return apply_pair_unchecked(
        transfer_series(left, ts), transfer_series(right, ts), projector(psi)
    )


def negativity_trace(left: NoiseFamily, right: NoiseFamily, psi, ts) -> np.ndarray:
    return negativity_batch(pair_outputs(left, right, psi, ts))


def lifetime_of_state(
    left: NoiseFamily,
    right: NoiseFamily,
    psi,
    horizon: float,
    steps: int = 1000,
    xtol: float = 1e-10,
) -> LifetimeReport:
    """Last time the evolved state is entangled (negativity above 1e-12).

    The negativity is scanned on ``steps`` uniform intervals of
    ``[0, horizon]`` and the last entangled-to-separable crossing is bisected.
    """
    if horizon <= 0:
        raise ValueError("horizon must be positive")
    psi = validate_pure(psi, tol=1e-10)
    ts = np.linspace(0.0, horizon, steps + 1)
    excess = negativity_trace(left, right, psi, ts) - NEGATIVITY_ZERO
    if excess[-1] > 0:
        raise StillEntangledError(f"negativity {excess[-1]:.3e} at horizon {horizon}")
    if excess[0] <= 0:
        return LifetimeReport(0.0, "numeric", psi)

    def g(t):
        return float(negativity_trace(left, right, psi, [t])[0]) - NEGATIVITY_ZERO

    tau = last_crossing(g, horizon, steps, xtol, values=excess)
    return LifetimeReport(tau, "numeric", psi)


def _reduction_at(f: NoiseFamily, t: float):
    return decompose(transfer_at(f, t))


def _pair_threshold(
    left: NoiseFamily, right: NoiseFamily, horizon: float, steps: int = 1000, xtol: float = 1e-12
):
    def path(f):
        return lambda t: _reduction_at(f, t).lambda_tilde

    lp, rp = path(left), path(right)
    tau = ea_threshold_time(lp, rp, horizon, steps, xtol)
    psi_u = robust_unital_state(lp, rp, tau)
    b_left = _reduction_at(left, tau).b_op
    b_right = _reduction_at(right, tau).b_op
    return tau, b_left, b_right, psi_u


def pair_ea_lifetime(
    left: NoiseFamily,
    right: NoiseFamily,
    horizon: float,
    steps: int = 1000,
    xtol: float = 1e-12,
) -> LifetimeReport:
    """Maximal entanglement lifetime of a local noise pair and a state attaining it.

    Both maps are Sinkhorn-reduced to unital form at every scan time; the
    lifetime is the entanglement-annihilation threshold of the reduced pair
    and the state is ``B(tau) (x) B'(tau)`` applied to the robust unital state.
    """
    tau, b_left, b_right, psi_u = _pair_threshold(left, right, horizon, steps, xtol)
    psi = np.kron(b_left, b_right) @ psi_u
    return LifetimeReport(tau, "numeric", psi / np.linalg.norm(psi))


__all__ = [
    "NoiseFamily",
    "LifetimeReport",
    "KINDS",
    "transfer_at",
    "transfer_series",
    "gad_channel",
    "gad_reduced_lambda",
    "gad_scaling_B",
    "gad_robust_state",
    "gad_tau_tilde",
    "gad_tau_bell",
    "gad_ea_time",
    "interpolated_state",
    "interpolation_path",
    "pair_outputs",
    "negativity_trace",
    "lifetime_of_state",
    "pair_ea_lifetime",
]
