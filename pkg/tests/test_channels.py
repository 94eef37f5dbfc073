import numpy as np
import pytest

from robustent.channels import (
    DiagonalChannel,
    apply_map,
    apply_pair,
    apply_pair_unchecked,
    as_ptm,
    canonical_form,
    choi_from_ptm,
    classify,
    compose,
    dual,
    embed_rotation,
    kraus_from_ptm,
    max_output_bloch_norm,
    pauli_channel,
    pauli_kraus,
    pauli_kraus_weights,
    ptm_from_choi,
    ptm_from_kraus,
    ptm_of_operator,
    special_svd,
    unitary_from_rotation,
)
from robustent.errors import (
    IncompleteKrausError,
    InvalidChannelError,
    InvalidStateError,
    NotCompletelyPositiveError,
)
from robustent.qubit import PSI_PLUS, SIGMA, partial_transpose, projector

from conftest import random_density, random_isometry_channel, random_unitary

AD = [np.diag([1, np.sqrt(0.25)]), np.sqrt(0.75) * np.array([[0, 1], [0, 0]])]


def test_ptm_from_kraus_examples():
    assert np.allclose(ptm_from_kraus([np.eye(2)]), np.eye(4))
    assert np.allclose(ptm_from_kraus([0.5 * s for s in SIGMA]), np.diag([1, 0, 0, 0]))
    m = ptm_from_kraus(AD)
    c, q_out, q_in = canonical_form(m)
    assert np.allclose(c.lam, (0.5, 0.5, 0.25))
    assert np.allclose(c.shift, (0, 0, 0.75))


def test_ptm_from_kraus_incomplete():
    with pytest.raises(IncompleteKrausError):
        ptm_from_kraus([0.5 * np.eye(2)])


def test_as_ptm_checks_row_zero():
    with pytest.raises(InvalidChannelError):
        as_ptm(np.eye(4) * 2)
    with pytest.raises(InvalidChannelError):
        as_ptm(np.eye(3))


def test_pauli_kraus_weights():
    assert np.allclose(pauli_kraus_weights([1, 1, 1]), [1, 0, 0, 0])
    assert np.allclose(pauli_kraus_weights([0, 0, 0]), [0.25] * 4)
    with pytest.raises(NotCompletelyPositiveError):
        pauli_kraus_weights([1, -1, 1])


def test_pauli_kraus_reproduces_channel(rng):
    for _ in range(20):
        q = rng.dirichlet(np.ones(4))
        lam = [q[0] + q[1] - q[2] - q[3], q[0] - q[1] + q[2] - q[3], q[0] - q[1] - q[2] + q[3]]
        w = pauli_kraus_weights(lam)
        assert w.min() >= -1e-12 and abs(w.sum() - 1) < 1e-12
        assert np.allclose(ptm_from_kraus(pauli_kraus(lam)), pauli_channel(lam), atol=1e-12)


def test_choi_examples():
    assert np.allclose(choi_from_ptm(np.eye(4)), projector(PSI_PLUS))
    assert np.allclose(choi_from_ptm(np.diag([1.0, 0, 0, 0])), np.eye(4) / 4)
    assert np.linalg.eigvalsh(choi_from_ptm(pauli_channel([1, -1, 1])))[0] < -1e-6


def test_choi_kraus_roundtrip(rng):
    for _ in range(50):
        m = random_isometry_channel(rng, rank=int(rng.integers(1, 5)))
        assert abs(np.trace(choi_from_ptm(m)) - 1) < 1e-12
        assert np.allclose(ptm_from_choi(choi_from_ptm(m)), m, atol=1e-12)
        assert np.allclose(ptm_from_kraus(kraus_from_ptm(m)), m, atol=1e-9)


def test_classify_examples():
    ident = classify(DiagonalChannel((1, 1, 1)))
    assert ident == classify(DiagonalChannel((1.0, 1.0, 1.0)))
    assert ident.positive and ident.completely_positive and ident.unital
    assert not ident.entanglement_breaking
    eb = classify(DiagonalChannel((0.4, 0.3, 0.2)))
    assert eb.entanglement_breaking and eb.completely_positive
    ad = classify(DiagonalChannel((0.5, 0.5, 0.25), (0, 0, 0.75)))
    assert ad.completely_positive and ad.positive and not ad.unital
    assert not ad.entanglement_breaking
    transpose = classify(DiagonalChannel((1, -1, 1)))
    assert transpose.positive and not transpose.completely_positive


def test_classify_rejects_outside_ellipsoid():
    c = classify(DiagonalChannel((0.5, 0.5, 0.5), (0, 0, 0.6)))
    assert not c.positive and not c.completely_positive


def test_classify_flags_are_nested(rng):
    for _ in range(30):
        c = DiagonalChannel(tuple(rng.uniform(-1, 1, 3)), tuple(rng.uniform(-0.3, 0.3, 3)))
        k = classify(c)
        assert not k.entanglement_breaking or k.completely_positive
        assert not k.completely_positive or k.positive


def test_max_output_bloch_norm_axial():
    c = DiagonalChannel((0.5, 0.5, 0.25), (0, 0, 0.75))
    assert abs(max_output_bloch_norm(c) - 1.0) < 1e-9


def test_compose_examples(rng):
    m = random_isometry_channel(rng)
    assert np.allclose(compose(np.eye(4), m), m)
    assert np.allclose(compose(pauli_channel([0.5, 0.2, 0.1]), pauli_channel([0.3, 0.4, 0.9])),
                       pauli_channel([0.15, 0.08, 0.09]))
    for _ in range(10):
        a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        b = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        assert np.allclose(compose(ptm_of_operator(a), ptm_of_operator(b)), ptm_of_operator(a @ b))


def test_dual(rng):
    lam = pauli_channel([0.3, 0.2, 0.1])
    assert np.array_equal(dual(lam), lam)
    ad = ptm_from_kraus(AD)
    # dual of a shifted channel is not trace preserving: row 0 picks up t
    assert not np.allclose(dual(ad)[0], [1, 0, 0, 0])
    m = random_isometry_channel(rng)
    assert np.array_equal(dual(dual(m)), m)
    for i in range(4):
        for j in range(4):
            lhs = np.trace(apply_map(dual(m), SIGMA[i]) @ SIGMA[j])
            rhs = np.trace(SIGMA[i] @ apply_map(m, SIGMA[j]))
            assert abs(lhs - rhs) < 1e-12


def test_canonical_form_examples(rng):
    c, q_out, q_in = canonical_form(pauli_channel([0.9, 0.5, 0.2]))
    assert np.allclose(q_out, np.eye(3)) and np.allclose(q_in, np.eye(3))
    u = random_unitary(rng)
    c, _, _ = canonical_form(ptm_of_operator(u))
    assert np.allclose(c.lam, (1, 1, 1))


def test_canonical_form_reassembles(rng):
    for _ in range(1000):
        m = random_isometry_channel(rng, rank=int(rng.integers(1, 5)))
        c, q_out, q_in = canonical_form(m)
        assert abs(np.linalg.det(q_out) - 1) < 1e-10 and abs(np.linalg.det(q_in) - 1) < 1e-10
        rebuilt = embed_rotation(q_out) @ c.ptm() @ embed_rotation(q_in)
        assert np.abs(rebuilt - m).max() < 1e-10
        sv = np.linalg.svd(m[1:, 1:], compute_uv=False)
        assert np.allclose(np.abs(c.lam), sv, atol=1e-12)
        assert min(c.lam[:2]) >= 0


def test_special_svd_reflection():
    u, s, vt = special_svd(np.diag([1.0, 1.0, -1.0]))
    assert np.allclose(s, [1, 1, -1]) and np.allclose(u, np.eye(3)) and np.allclose(vt, np.eye(3))


def test_unitary_from_rotation(rng):
    for _ in range(50):
        u = random_unitary(rng)
        q = ptm_of_operator(u)[1:, 1:]
        v = unitary_from_rotation(q)
        assert np.allclose(ptm_of_operator(v)[1:, 1:], q, atol=1e-12)


def test_apply_pair_examples(rng):
    rho = random_density(rng)
    assert np.allclose(apply_pair(np.eye(4), np.eye(4), rho), rho)
    out = apply_pair(np.diag([1.0, 0, 0, 0]), np.eye(4), projector(PSI_PLUS))
    assert np.allclose(out, np.eye(4) / 4)


def test_apply_pair_pt_spectrum(rng):
    for _ in range(20):
        lam, lp = rng.uniform(-1, 1, 3), rng.uniform(-1, 1, 3)
        out = apply_pair_unchecked(pauli_channel(lam), pauli_channel(lp), projector(PSI_PLUS))
        ev = np.sort(np.linalg.eigvalsh(partial_transpose(out)))
        a, b, c = lam * lp
        expected = np.sort([(1 + s3 * c + s1 * (a - s3 * b)) / 4 for s3 in (1, -1) for s1 in (1, -1)])
        assert np.allclose(ev, expected, atol=1e-12)


def test_apply_pair_linear(rng):
    m1, m2 = random_isometry_channel(rng), random_isometry_channel(rng)
    r1, r2 = random_density(rng), random_density(rng)
    p = 0.3
    lhs = apply_pair(m1, m2, p * r1 + (1 - p) * r2)
    rhs = p * apply_pair(m1, m2, r1) + (1 - p) * apply_pair(m1, m2, r2)
    assert np.abs(lhs - rhs).max() < 1e-12


def test_apply_pair_rejects_non_cp():
    with pytest.raises(InvalidStateError):
        apply_pair(pauli_channel([1, -1, 1]), np.eye(4), projector(PSI_PLUS))
