import numpy as np
import pytest

from robustent.channels import ptm_from_kraus


def random_isometry_channel(rng, rank=4, damp=None):
    """PTM of a random channel with ``rank`` Kraus operators (Haar isometry)."""
    g = rng.normal(size=(2 * rank, 2)) + 1j * rng.normal(size=(2 * rank, 2))
    if damp is not None:
        g[4:] *= damp
    v, _ = np.linalg.qr(g)
    return ptm_from_kraus(v.reshape(rank, 2, 2))


def random_density(rng, rank=4):
    g = rng.normal(size=(4, rank)) + 1j * rng.normal(size=(4, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho)


def random_pure(rng):
    psi = rng.normal(size=4) + 1j * rng.normal(size=4)
    return psi / np.linalg.norm(psi)


def random_unitary(rng):
    g = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / abs(np.diag(r)))


def random_unital_cp_lambda(rng):
    # Pauli channel from random probabilities
    q = rng.dirichlet(np.ones(4))
    return np.array([q[0] + q[1] - q[2] - q[3], q[0] - q[1] + q[2] - q[3], q[0] - q[1] - q[2] + q[3]])


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def pytest_terminal_summary(terminalreporter):
    # acceptance lines are printed inside captured tests; repeat them here
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
