import numpy as np
import pytest

from robustent.errors import InvalidStateError, NonHermitianError, NonUnitaryError
from robustent.qubit import (
    PSI_PLUS,
    SIGMA,
    hermitian_eigenvalues,
    local_unitary,
    make_bell_like,
    min_pt_eigenvalue,
    negativity,
    negativity_batch,
    partial_transpose,
    projector,
    validate_density,
    validate_pure,
)

from conftest import random_density, random_pure, random_unitary

RHO_PLUS = projector(PSI_PLUS)


def test_eigenvalues_examples():
    assert np.allclose(hermitian_eigenvalues(np.eye(4)), [1, 1, 1, 1])
    assert np.allclose(hermitian_eigenvalues(np.diag([3.0, -1, 2, 0])), [-1, 0, 2, 3])
    assert np.allclose(hermitian_eigenvalues(partial_transpose(RHO_PLUS)), [-0.5, 0.5, 0.5, 0.5])


def test_eigenvalues_reconstruct(rng):
    for _ in range(20):
        rho = random_density(rng)
        ev = hermitian_eigenvalues(rho)
        assert np.all(np.diff(ev) >= 0)
        assert abs(ev.sum() - 1) < 1e-12


def test_eigenvalues_rejects_non_hermitian():
    with pytest.raises(NonHermitianError):
        hermitian_eigenvalues(np.array([[0, 1], [0, 0]]))
    with pytest.raises(ValueError):
        hermitian_eigenvalues(np.eye(3))


def test_partial_transpose_product_and_involution(rng):
    a = random_density(rng)[:2, :2]
    a = a / np.trace(a)
    b = np.array([[0.7, 0.2 - 0.1j], [0.2 + 0.1j, 0.3]])
    pt = partial_transpose(np.kron(a, b))
    assert np.allclose(pt, np.kron(a, b.T))
    assert np.linalg.eigvalsh(pt)[0] > -1e-12
    for _ in range(100):
        rho = random_density(rng)
        pt = partial_transpose(rho)
        assert np.allclose(partial_transpose(pt), rho)
        assert np.allclose(pt, pt.conj().T)
        assert abs(np.trace(pt) - 1) < 1e-12


def test_partial_transpose_of_bell_state():
    assert np.isclose(min_pt_eigenvalue(RHO_PLUS), -0.5)


def test_negativity_examples():
    assert np.isclose(negativity(RHO_PLUS), 0.5)
    assert negativity(np.kron(np.diag([1.0, 0]), np.diag([0.3, 0.7]))) == 0.0
    p = 0.5
    werner = p * RHO_PLUS + (1 - p) * np.eye(4) / 4
    assert np.isclose(negativity(werner), 0.125)
    assert np.isclose(negativity(werner), (3 * p - 1) / 4)


def test_negativity_local_unitary_invariance(rng):
    for _ in range(50):
        rho = random_density(rng, rank=2)
        rot = local_unitary(random_unitary(rng), random_unitary(rng), rho)
        assert abs(negativity(rot) - negativity(rho)) < 1e-10


def test_negativity_of_pure_state_is_schmidt_product(rng):
    for _ in range(100):
        psi = random_pure(rng)
        s = np.linalg.svd(psi.reshape(2, 2), compute_uv=False)
        assert abs(negativity(projector(psi)) - s[0] * s[1]) < 1e-10


def test_negativity_batch_matches_scalar(rng):
    rhos = np.array([random_density(rng) for _ in range(10)])
    assert np.allclose(negativity_batch(rhos), [negativity(r) for r in rhos])


def test_make_bell_like_examples(rng):
    assert np.allclose(make_bell_like(np.eye(2), np.eye(2)), PSI_PLUS)
    assert np.allclose(make_bell_like(SIGMA[1], np.eye(2)), [0, 1 / np.sqrt(2), 1 / np.sqrt(2), 0])
    for _ in range(20):
        psi = make_bell_like(random_unitary(rng), random_unitary(rng))
        assert abs(np.linalg.norm(psi) - 1) < 1e-12
        assert abs(negativity(projector(psi)) - 0.5) < 1e-12


def test_make_bell_like_rejects_non_unitary():
    with pytest.raises(NonUnitaryError):
        make_bell_like(2 * np.eye(2), np.eye(2))


def test_validation():
    assert validate_pure(PSI_PLUS) is not None
    with pytest.raises(InvalidStateError):
        validate_pure(np.array([1.0, 1, 0, 0]))
    validate_density(RHO_PLUS)
    with pytest.raises(InvalidStateError):
        validate_density(2 * RHO_PLUS)
    with pytest.raises(InvalidStateError):
        validate_density(np.diag([1.5, -0.5, 0, 0]))
    with pytest.raises(InvalidStateError):
        validate_density(np.triu(np.ones((4, 4))) / 4)
