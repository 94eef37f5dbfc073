import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from robustent.channels import DiagonalChannel, apply_pair_unchecked, pauli_channel
from robustent.errors import AlreadyAnnihilatingError, NoThresholdError, NotPositiveError, NotUnitalError
from robustent.qubit import PSI_ONE_EXCITATION, PSI_PLUS, min_pt_eigenvalue, negativity, projector, same_ray
from robustent.unital import (
    SIGNED_PERMUTATIONS,
    _sorted_pairing,
    ea_threshold_time,
    is_ea_pair,
    robust_unital_state,
    signed_permutation_max,
    witness_family,
    witness_min_pt_eigenvalues,
)

from conftest import random_unital_cp_lambda

unit = st.floats(-1, 1, allow_nan=False)
triple = st.tuples(unit, unit, unit)


def ad_path(gamma):
    return lambda t: (np.exp(-gamma * t), np.exp(-gamma * t), np.exp(-2 * gamma * t))


def test_signed_permutations():
    assert len(SIGNED_PERMUTATIONS) == 48
    mats = {p.matrix.tobytes() for p in SIGNED_PERMUTATIONS}
    assert len(mats) == 48
    for p in SIGNED_PERMUTATIONS:
        m = np.abs(p.matrix)
        assert np.array_equal(m.sum(0), np.ones(3)) and np.array_equal(m.sum(1), np.ones(3))


def test_signed_permutation_max_examples():
    v = signed_permutation_max((1, 1, 1), (1, 1, 1))
    assert v.max_value == 3 and not v.annihilating
    v = signed_permutation_max((0.3, -0.2, 0.9), (0, 0, 0))
    assert v.max_value == 0 and v.annihilating
    v = signed_permutation_max((0.9, 0.8, 0.7), (0.7, 0.8, 0.9))
    assert abs(v.max_value - 1.94) < 1e-12
    assert v.argmax.perm == (2, 1, 0) and v.argmax.signs == (1, 1, 1)


def test_argmax_is_lexicographically_first():
    # all 48 tie at zero
    v = signed_permutation_max((0, 0, 0), (0, 0, 0))
    assert v.argmax == SIGNED_PERMUTATIONS[0]


@settings(max_examples=200, deadline=None)
@given(triple, triple, st.integers(0, 47))
def test_signed_permutation_invariance(lam, lp, k):
    p = SIGNED_PERMUTATIONS[k].matrix
    a = signed_permutation_max(lam, lp).max_value
    b = signed_permutation_max(p @ np.array(lam), p @ np.array(lp)).max_value
    assert abs(a - b) < 1e-12


def test_is_ea_pair_examples():
    for q in np.linspace(0, 1, 21):
        v = is_ea_pair(DiagonalChannel((q, q, q)), DiagonalChannel((q, q, q)))
        assert v.annihilating == (3 * q * q <= 1 + 1e-12)
    v = is_ea_pair(DiagonalChannel((1, 0, 0)), DiagonalChannel((1, 0, 0)))
    assert v.max_value == 1 and v.annihilating
    v = is_ea_pair(DiagonalChannel((0.6, 0.5, 0.4)), DiagonalChannel((0.7, 0.6, 0.5)))
    assert abs(v.max_value - 0.92) < 1e-12 and v.annihilating


def test_is_ea_pair_errors():
    with pytest.raises(NotUnitalError):
        is_ea_pair(DiagonalChannel((0.5, 0.5, 0.5), (0, 0, 0.1)), DiagonalChannel((0, 0, 0)))
    with pytest.raises(NotPositiveError):
        is_ea_pair(DiagonalChannel((1.5, 0, 0)), DiagonalChannel((0, 0, 0)))


def test_sorted_fast_path_agrees(rng):
    for _ in range(10_000):
        lam, lp = rng.uniform(0, 1, 3), rng.uniform(0, 1, 3)
        fast = _sorted_pairing(lam, lp)
        full = signed_permutation_max(lam, lp)
        assert fast.max_value == full.max_value or abs(fast.max_value - full.max_value) < 1e-15
        assert fast.annihilating == full.annihilating


def test_threshold_example_1():
    for g, gp in [(1, 1), (0.3, 1.7), (2, 0.5)]:
        tau = ea_threshold_time(ad_path(g), ad_path(gp), 5.0)
        assert abs(tau - np.log(np.sqrt(2) + 1) / (g + gp)) < 1e-10


def test_threshold_example_2():
    dep = lambda t: (np.exp(-t),) * 3  # noqa: E731
    tau = ea_threshold_time(ad_path(1.0), dep, 5.0)
    assert abs((1 + np.exp(-tau)) ** 2 - 1 - np.exp(tau)) < 1e-9
    assert abs(tau - 0.483) < 5e-3
    approx = 3 * np.log(3) / 7
    assert abs(tau - approx) / tau < 0.03


def test_threshold_errors():
    half = lambda t: (0.5, 0.5, 0.5)  # noqa: E731
    with pytest.raises(AlreadyAnnihilatingError):
        ea_threshold_time(half, half, 1.0)
    with pytest.raises(NoThresholdError):
        ea_threshold_time(ad_path(1.0), ad_path(1.0), 0.1)
    with pytest.raises(ValueError):
        ea_threshold_time(ad_path(1.0), ad_path(1.0), -1.0)


def test_witness_family():
    fam = witness_family()
    # 24 Bell-like states whose correlation matrix is a signed permutation
    assert len(fam) == 24
    assert same_ray(fam[0], PSI_PLUS)
    assert any(same_ray(f, PSI_ONE_EXCITATION) for f in fam)
    for i, f in enumerate(fam):
        assert abs(negativity(projector(f)) - 0.5) < 1e-12
        assert not any(same_ray(f, g) for g in fam[:i])


def test_robust_unital_state_examples():
    tau = np.log(np.sqrt(2) + 1) / 2
    psi = robust_unital_state(ad_path(1.0), ad_path(1.0), tau)
    assert same_ray(psi, PSI_ONE_EXCITATION)
    dep = lambda t: (np.exp(-t),) * 3  # noqa: E731
    tau2 = ea_threshold_time(ad_path(1.0), dep, 5.0)
    assert same_ray(robust_unital_state(ad_path(1.0), dep, tau2), PSI_ONE_EXCITATION)
    assert abs(negativity(projector(psi)) - 0.5) < 1e-12


def test_robust_state_outlives_family():
    # just before the threshold the robust witness is still entangled
    tau = np.log(np.sqrt(2) + 1) / 2
    psi = robust_unital_state(ad_path(1.0), ad_path(1.0), tau)
    t = 0.999 * tau
    m = pauli_channel(ad_path(1.0)(t))
    out = apply_pair_unchecked(m, m, projector(psi))
    assert min_pt_eigenvalue(out) < -1e-6
    assert min_pt_eigenvalue(out) <= witness_min_pt_eigenvalues(m, m).min() + 1e-12


def test_verdicts_match_witness_refutation(rng):
    for _ in range(500):
        lam, lp = random_unital_cp_lambda(rng), random_unital_cp_lambda(rng)
        v = is_ea_pair(DiagonalChannel(tuple(lam)), DiagonalChannel(tuple(lp)))
        mins = witness_min_pt_eigenvalues(pauli_channel(lam), pauli_channel(lp))
        if v.annihilating:
            assert mins.min() >= -1e-10
        elif v.max_value > 1 + 1e-9:
            assert mins.min() < -1e-10
