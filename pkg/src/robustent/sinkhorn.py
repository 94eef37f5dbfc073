"""Quantum Sinkhorn scaling of nonunital qubit channels.

Any channel in the interior of the positive cone factors as
``Phi = Phi_{A^-1} o Upsilon o Phi_{B^-1}`` with nondegenerate ``A``, ``B`` and
a unital ``Upsilon`` whose transfer matrix is ``diag(1, lambda_tilde)``.  Here
``Phi_X[rho] = X rho X^dag``.

The scaling comes from the fixed point ``S = (Phi[(Phi^dag[S])^-1])^-1``.  In the
canonical frame ``S = I + x . sigma`` and the largest real root ``y`` of a
quartic fixes ``x``; everything after that is closed form.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .channels import (
    DiagonalChannel,
    as_ptm,
    canonical_form,
    dual,
    ellipsoid_slack,
    ptm_of_operator,
    special_svd,
    unitary_from_rotation,
    apply_map,
    _SPHERE_GRID,
)
from .errors import (
    BoundaryChannelError,
    DegenerateScalingError,
    NoConvergenceError,
    NoValidRootError,
    PoleHitError,
    VerificationFailedError,
)
from .qubit import SIGMA

REAL_ROOT_TOL = 1e-9
NEAR_REAL_TOL = 1e-6
ACTIVE_TOL = 1e-12
VERIFY_TOL = 1e-9
INTERIOR_MARGIN = 1e-10


@dataclass(frozen=True)
class QuarticCoefficients:
    """``y^4 + b y^3 + c y^2 + d y + e``."""

    b: float
    c: float
    d: float
    e: float

    def __call__(self, y):
        return (((y + self.b) * y + self.c) * y + self.d) * y + self.e

    def derivative(self, y):
        return ((4 * y + 3 * self.b) * y + 2 * self.c) * y + self.d


@dataclass(frozen=True)
class FixedPointData:
    y: float
    x: tuple[float, float, float]
    x_norm: float
    xi: float

    @property
    def s_op(self) -> np.ndarray:
        """``S = I + sum_j x_j sigma_j`` (trace 2)."""
        return SIGMA[0] + np.einsum("j,jab->ab", np.asarray(self.x), SIGMA[1:])


@dataclass(frozen=True)
class UnitalReduction:
    """Result of :func:`decompose`.

    ``ptm(Phi_{a_op}) @ M @ ptm(Phi_{b_op}) = diag(1, lambda_tilde)``.

    ``a_tilde`` and ``b_tilde`` are the Hermitian positive-definite scalings in
    the canonical frame; ``a_op`` and ``b_op`` fold in all frame rotations and
    are in general not Hermitian.  Their overall scale is whatever the
    construction produced and carries no meaning for entanglement questions.
    """

    a_op: np.ndarray
    b_op: np.ndarray
    lambda_tilde: tuple[float, float, float]
    q_u: np.ndarray
    q_v: np.ndarray
    a_tilde: np.ndarray
    b_tilde: np.ndarray
    residual: float

    @property
    def unital_ptm(self) -> np.ndarray:
        return np.diag([1.0, *self.lambda_tilde])


def quartic_coefficients(c: DiagonalChannel) -> QuarticCoefficients:
    l1, l2, l3 = (v * v for v in c.lam)
    t1, t2, t3 = (v * v for v in c.shift)
    b = t1 + t2 + t3 - l1 - l2 - l3 - 1
    cc = (
        l1 * (1 - t2 - t3)
        + l2 * (1 - t1 - t3)
        + l3 * (1 - t1 - t2)
        + l1 * l2
        + l2 * l3
        + l3 * l1
    )
    d = t1 * l2 * l3 + l1 * t2 * l3 + l1 * l2 * t3 - l1 * l2 * l3 - l1 * l2 - l2 * l3 - l3 * l1
    e = l1 * l2 * l3
    return QuarticCoefficients(b, cc, d, e)


def _cubic_roots(a: float, b: float, c: float) -> list[complex]:
    """Roots of ``x^3 + a x^2 + b x + c`` (Cardano, complex arithmetic)."""
    p = b - a * a / 3
    q = 2 * a**3 / 27 - a * b / 3 + c
    disc = (q / 2) ** 2 + (p / 3) ** 3
    big = -q / 2 + cmath.sqrt(disc)
    if abs(big) < abs(-q / 2 - cmath.sqrt(disc)):
        big = -q / 2 - cmath.sqrt(disc)
    if big == 0:
        return [complex(-a / 3)] * 3
    u = big ** (1 / 3)
    omega = complex(-0.5, np.sqrt(3) / 2)
    roots = []
    for k in range(3):
        uk = u * omega**k
        roots.append(uk - p / (3 * uk) - a / 3)
    return roots


def solve_quartic(q: QuarticCoefficients) -> list[complex]:
    """All four roots of the quartic by Ferrari's resolvent cubic, Newton-polished once."""
    b, c, d, e = q.b, q.c, q.d, q.e
    shift = b / 4
    p = c - 3 * b * b / 8
    qq = d - b * c / 2 + b**3 / 8
    r = e - b * d / 4 + b * b * c / 16 - 3 * b**4 / 256
    scale = max(1.0, abs(p), abs(r))
    if abs(qq) <= 1e-14 * scale:
        # biquadratic: z^4 + p z^2 + r = 0
        root = cmath.sqrt(p * p - 4 * r)
        zs = []
        for w in ((-p + root) / 2, (-p - root) / 2):
            s = cmath.sqrt(w)
            zs += [s, -s]
    else:
        # resolvent: 8 m^3 + 8 p m^2 + (2 p^2 - 8 r) m - q^2 = 0 has a positive root
        cands = _cubic_roots(p, p * p / 4 - r, -qq * qq / 8)
        m = max(cands, key=lambda z: z.real).real
        for _ in range(3):
            f = ((m + p) * m + p * p / 4 - r) * m - qq * qq / 8
            df = (3 * m + 2 * p) * m + p * p / 4 - r
            if df == 0:
                break
            m -= f / df
        s = cmath.sqrt(2 * m)
        zs = []
        for sign in (1, -1):
            # z^2 - sign*s z + p/2 + m + sign*q/(2s) = 0
            bb = -sign * s
            cc = p / 2 + m + sign * qq / (2 * s)
            disc = cmath.sqrt(bb * bb - 4 * cc)
            zs += [(-bb + disc) / 2, (-bb - disc) / 2]
    roots = []
    for z in zs:
        y = z - shift
        dy = q.derivative(y)
        if dy != 0:
            polished = y - q(y) / dy
            if abs(q(polished)) <= abs(q(y)):
                y = polished
        roots.append(complex(y))
    return roots


def largest_real_root(q: QuarticCoefficients, lam) -> float:
    """Largest real root; must exceed ``max lambda_j^2`` for a positive interior channel."""
    reals = [z.real for z in solve_quartic(q) if abs(z.imag) < REAL_ROOT_TOL]
    floor = max(v * v for v in lam)
    if not reals or max(reals) <= floor:
        raise NoValidRootError(f"no real root above max lambda^2 = {floor}")
    return float(max(reals))


def secular(c: DiagonalChannel, y: float) -> float:
    """``y - 1 - y sum_j t_j^2 / (lambda_j^2 - y)``; zero at the fixed point."""
    total = sum(tj * tj / (lj * lj - y) for lj, tj in zip(c.lam, c.shift) if tj != 0.0)
    return y - 1 - y * total


def _reduced_polynomial(lam2, t2) -> np.polynomial.Polynomial:
    # secular equation times prod_j (y - lambda_j^2) over the active axes only
    P = np.polynomial.Polynomial
    y = P([0.0, 1.0])
    poles = [y - l for l in lam2]
    out = y - 1
    for pole in poles:
        out = out * pole
    for j, tj in enumerate(t2):
        term = y * tj
        for k, pole in enumerate(poles):
            if k != j:
                term = term * pole
        out = out + term
    return out


def fixed_point_root(c: DiagonalChannel) -> float:
    """Root ``y`` of the secular equation that gives a positive fixed point.

    Axes with ``t_j = 0`` carry ``x_j = 0`` and are dropped, which removes the
    spurious roots at their poles (Kraus-rank-2 channels sit exactly there).
    With every axis active this is the largest real root of the quartic.
    Nearly real roots are polished on the real line before the physical
    check ``|x| < 1``, ``y > |lambda x|``.
    """
    active = [j for j in range(3) if abs(c.shift[j]) > ACTIVE_TOL]
    lam2 = [c.lam[j] ** 2 for j in active]
    t2 = [c.shift[j] ** 2 for j in active]
    if len(active) == 3:
        q = quartic_coefficients(c)
        cands = solve_quartic(q)
        poly = np.polynomial.Polynomial([q.e, q.d, q.c, q.b, 1.0])
    else:
        poly = _reduced_polynomial(lam2, t2)
        cands = list(poly.roots()) if poly.degree() > 0 else []
    dpoly = poly.deriv()
    floor = max(lam2, default=0.0)
    roots = []
    for z in cands:
        if abs(z.imag) > NEAR_REAL_TOL:
            continue
        y = float(z.real)
        for _ in range(8):
            dy = dpoly(y)
            if dy == 0:
                break
            step = poly(y) / dy
            y -= step
            if abs(step) <= 1e-16 * max(1.0, abs(y)):
                break
        if y > floor:
            roots.append(y)
    for y in sorted(roots, reverse=True):
        try:
            f = fixed_point_data(c, y)
        except PoleHitError:
            continue
        if f.x_norm < 1 and f.xi < y:
            return y
    raise NoValidRootError(f"no admissible root above max lambda^2 = {floor}")


def fixed_point_data(c: DiagonalChannel, y: float) -> FixedPointData:
    x = []
    for lj, tj in zip(c.lam, c.shift):
        if abs(tj) <= ACTIVE_TOL:
            x.append(0.0)
            continue
        gap = lj * lj - y
        if abs(gap) < 1e-14:
            raise PoleHitError(f"y = {y} sits on the pole lambda^2 = {lj * lj}")
        x.append(y * tj / gap)
    xs = np.asarray(x)
    return FixedPointData(
        y=float(y),
        x=tuple(float(v) for v in xs),
        x_norm=float(np.linalg.norm(xs)),
        xi=float(np.linalg.norm(np.asarray(c.lam) * xs)),
    )


def _direction(v: np.ndarray, norm: float) -> np.ndarray:
    return v / norm if norm > 0 else np.zeros(3)


def scaling_operators(c: DiagonalChannel, f: FixedPointData) -> tuple[np.ndarray, np.ndarray]:
    """``(A~, B~) = (sqrt(S), Phi^dag[S]^(-1/2))`` in closed form."""
    x, xi, y = f.x_norm, f.xi, f.y
    if x >= 1 - 1e-12 or xi >= y - 1e-12:
        raise DegenerateScalingError(f"x = {x}, xi = {xi}, y = {y}")
    xs = np.asarray(f.x)
    lx = np.asarray(c.lam) * xs
    sp, sm = np.sqrt(1 + x), np.sqrt(1 - x)
    # (sqrt(1+x) - sqrt(1-x)) / (2x) rewritten without cancellation
    a_tilde = 0.5 * (sp + sm) * SIGMA[0] + np.einsum("j,jab->ab", xs / (sp + sm), SIGMA[1:])
    yp, ym = np.sqrt(y + xi), np.sqrt(y - xi)
    root = np.sqrt(y * y - xi * xi)
    b_tilde = (yp + ym) / (2 * root) * SIGMA[0] - np.einsum(
        "j,jab->ab", lx / ((yp + ym) * root), SIGMA[1:]
    )
    return a_tilde, b_tilde


def reduced_unital_matrix(c: DiagonalChannel, f: FixedPointData) -> np.ndarray:
    """3x3 Bloch block of ``Phi_{A~} o Phi o Phi_{B~}`` in closed form."""
    lam = np.asarray(c.lam)
    xs = np.asarray(f.x)
    x2 = f.x_norm**2
    xi2 = f.xi**2
    y = f.y
    rx = np.sqrt(1 - x2)
    ry = np.sqrt(y * y - xi2)
    # (1 - sqrt(1-x^2))/x^2 and (y - sqrt(y^2-xi^2))/xi^2 in stable form
    gx = 1 / (1 + rx)
    gy = 1 / (y + ry)
    coeff = gx / ry - gy * lam**2 / (rx * y)
    return (1 - x2) / ry * (np.diag(lam) / rx + np.outer(coeff * xs, lam * xs))


def special_diagonalize(m) -> tuple[np.ndarray, tuple[float, float, float], np.ndarray]:
    """``m = q_u @ diag(lambda_tilde) @ q_v`` with ``q_u, q_v`` in SO(3)."""
    q_u, s, q_v = special_svd(m)
    return q_u, tuple(float(v) for v in s), q_v


def _check_interior(c: DiagonalChannel) -> None:
    if ellipsoid_slack(c) <= INTERIOR_MARGIN:
        raise BoundaryChannelError(f"shift {c.shift} not strictly inside the positivity ellipsoid")
    norms = np.linalg.norm(_SPHERE_GRID * np.asarray(c.lam) + np.asarray(c.shift), axis=1)
    if norms.max() > 1 - INTERIOR_MARGIN:
        raise BoundaryChannelError("channel maps some pure state onto or outside the Bloch sphere")


def verify_reduction(m, a_op, b_op, lambda_tilde) -> float:
    reduced = ptm_of_operator(a_op) @ np.asarray(m) @ ptm_of_operator(b_op)
    return float(np.abs(reduced - np.diag([1.0, *lambda_tilde])).max())


def decompose(m, canonical: tuple | None = None) -> UnitalReduction:
    """Sinkhorn reduction of a channel to diagonal unital form.

    Unital inputs reduce with ``A~ = B~ = I``.  Channels on the boundary of the
    positive cone raise :class:`BoundaryChannelError`.
    """
    m = as_ptm(m)
    c, q_out, q_in = canonical if canonical is not None else canonical_form(m)
    if max(abs(v) for v in c.shift) == 0.0:
        a_tilde = b_tilde = SIGMA[0].copy()
        block = np.diag(c.lam)
    else:
        _check_interior(c)
        try:
            y = fixed_point_root(c)
            f = fixed_point_data(c, y)
            a_tilde, b_tilde = scaling_operators(c, f)
        except (NoValidRootError, PoleHitError, DegenerateScalingError) as exc:
            raise BoundaryChannelError(str(exc)) from exc
        block = reduced_unital_matrix(c, f)
    q_u, lam_t, q_v = special_diagonalize(block)
    u_out = unitary_from_rotation(q_out)
    u_in = unitary_from_rotation(q_in)
    u_t = unitary_from_rotation(q_u)
    v_t = unitary_from_rotation(q_v)
    a_op = u_t.conj().T @ a_tilde @ u_out.conj().T
    b_op = u_in.conj().T @ b_tilde @ v_t.conj().T
    residual = verify_reduction(m, a_op, b_op, lam_t)
    if residual > VERIFY_TOL:
        raise VerificationFailedError(f"reduction residual {residual:.3e} exceeds {VERIFY_TOL}")
    return UnitalReduction(a_op, b_op, lam_t, q_u, q_v, a_tilde, b_tilde, residual)


def axial_x3(lam3: float, t3: float) -> float:
    g_plus = (1 + t3) ** 2 - lam3**2
    g_minus = (1 - t3) ** 2 - lam3**2
    root = np.sqrt(g_plus * g_minus)
    return float(-t3 * (1 - t3**2 + lam3**2 + root) / (1 - t3**2 - lam3**2 + root))


def axial_lambda_tilde(lam, t3: float) -> tuple[float, float, float]:
    l1, l2, l3 = lam
    denom = np.sqrt((1 + l3) ** 2 - t3**2) + np.sqrt((1 - l3) ** 2 - t3**2)
    return (2 * l1 / denom, 2 * l2 / denom, 4 * l3 / denom**2)


def decompose_axial(c: DiagonalChannel) -> UnitalReduction:
    """Closed-form reduction when only ``t_3`` is nonzero.

    ``A`` and ``B`` are diagonal.  The ``A`` diagonal is ordered by the sign
    of ``x_3`` so the formula holds for either sign of ``t_3``.
    """
    t1, t2, t3 = c.shift
    if t1 != 0.0 or t2 != 0.0:
        raise ValueError("decompose_axial needs t1 = t2 = 0")
    l3 = c.lam[2]
    if (1 + t3) ** 2 - l3**2 <= 1e-12 or (1 - t3) ** 2 - l3**2 <= 1e-12 or max(map(abs, c.lam)) >= 1:
        if t3 != 0.0:
            raise BoundaryChannelError(f"axial channel lambda={c.lam}, t3={t3} is on the boundary")
    if t3 == 0.0:
        eye = SIGMA[0].copy()
        return UnitalReduction(eye, eye, tuple(c.lam), np.eye(3), np.eye(3), eye, eye, 0.0)
    x3 = axial_x3(l3, t3)
    hi = np.sqrt((1 + abs(t3)) ** 2 - l3**2)
    lo = np.sqrt((1 - abs(t3)) ** 2 - l3**2)
    norm = 2 / (np.sqrt((1 + t3) ** 2 - l3**2) + np.sqrt((1 - t3) ** 2 - l3**2))
    # sqrt(1 + x3) sits on |0><0|; x3 has the sign opposite to t3
    diag_a = (hi, lo) if x3 >= 0 else (lo, hi)
    a_op = np.sqrt(norm * np.diag(diag_a))
    lx = abs(l3 * x3)
    b_op = np.diag([1 / np.sqrt(1 + t3 * x3 + lx), 1 / np.sqrt(1 + t3 * x3 - lx)]).astype(complex)
    if l3 * x3 < 0:
        b_op = b_op[::-1, ::-1].copy()
    lam_t = axial_lambda_tilde(c.lam, t3)
    residual = verify_reduction(c.ptm(), a_op, b_op, lam_t)
    return UnitalReduction(a_op, b_op, lam_t, np.eye(3), np.eye(3), a_op, b_op, residual)


def fixed_point_map(m, s: np.ndarray) -> np.ndarray:
    """``F[S] = (Phi[(Phi^dag[S])^-1])^-1``."""
    inner = np.linalg.inv(apply_map(dual(m), s))
    return np.linalg.inv(apply_map(m, inner))


def iterate_fixed_point(m, tol: float = 1e-13, max_iter: int = 100_000) -> np.ndarray:
    """Fixed point of :func:`fixed_point_map` by plain iteration from ``S = I``.

    The trace is renormalized to 2 after every step.
    """
    m = as_ptm(m)
    s = SIGMA[0].copy()
    for _ in range(max_iter):
        nxt = fixed_point_map(m, s)
        nxt = 2 * nxt / np.trace(nxt).real
        nxt = 0.5 * (nxt + nxt.conj().T)
        step = np.abs(nxt - s).max()
        s = nxt
        if step < tol:
            return s
    raise NoConvergenceError(f"no convergence after {max_iter} iterations")
