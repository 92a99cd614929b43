import numpy as np
import pytest

from quasinv.channels import (
    IDENTITY2,
    PAULIS,
    SIGMA_X,
    SIGMA_Z,
    AffineChannel,
    KrausChannel,
    UnitaryParams,
    apply,
    check_bloch,
    choi,
    compose,
    identity_channel,
    kraus_to_affine,
    phase_distance,
    random_channel,
    unitary_matrix,
    unitary_to_affine,
    validate_cptp,
)
from quasinv.numerics import RngStream, ball_samples, eig_herm4, sphere4_samples

AXIS_STATES = [
    np.array(v, dtype=float)
    for v in [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
]


def gad_kraus(gamma, p):
    off = np.sqrt(1 - gamma * gamma)
    return KrausChannel(
        [
            np.sqrt(p) * np.array([[1, 0], [0, gamma]], dtype=complex),
            np.sqrt(p) * np.array([[0, off], [0, 0]], dtype=complex),
            np.sqrt(1 - p) * np.array([[gamma, 0], [0, 1]], dtype=complex),
            np.sqrt(1 - p) * np.array([[0, 0], [off, 0]], dtype=complex),
        ]
    )


def bloch_of(rho):
    return np.array([np.trace(s @ rho).real for s in PAULIS])


def density_of(r):
    return 0.5 * (IDENTITY2 + r[0] * PAULIS[0] + r[1] * PAULIS[1] + r[2] * PAULIS[2])


class TestKrausChannel:
    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            KrausChannel([])

    def test_rejects_non_tp(self):
        with pytest.raises(ValueError, match="trace preserving"):
            KrausChannel([0.5 * IDENTITY2])

    def test_rejects_bad_shape(self):
        with pytest.raises(ValueError):
            KrausChannel([np.eye(3)])

    def test_tp_residual_small_for_valid(self):
        assert gad_kraus(0.4, 0.7).tp_residual() < 1e-15


class TestKrausToAffine:
    def test_identity(self):
        e = kraus_to_affine(KrausChannel([IDENTITY2]))
        assert np.allclose(e.m, np.eye(3), atol=1e-15)
        assert np.allclose(e.c, 0.0, atol=1e-15)

    def test_sigma_x(self):
        e = kraus_to_affine(KrausChannel([SIGMA_X]))
        assert np.allclose(e.m, np.diag([1.0, -1.0, -1.0]), atol=1e-15)
        assert np.allclose(e.c, 0.0, atol=1e-15)
        # cross-check on the six axis states via density matrices
        k = KrausChannel([SIGMA_X])
        for r in AXIS_STATES:
            z = bloch_of(k.evaluate(density_of(r)))
            assert np.allclose(e.m @ r + e.c, z, atol=1e-14)

    @pytest.mark.parametrize("gamma", [-0.9, -0.5, 0.0, 0.3, 0.8, 1.0])
    @pytest.mark.parametrize("p", [0.0, 0.25, 0.5, 1.0])
    def test_gad_affine(self, gamma, p):
        e = kraus_to_affine(gad_kraus(gamma, p))
        assert np.allclose(e.m, np.diag([gamma, gamma, gamma * gamma]), atol=1e-14)
        expected_c = np.array([0.0, 0.0, (1 - gamma * gamma) * (2 * p - 1)])
        assert np.allclose(e.c, expected_c, atol=1e-14)


class TestApplyCompose:
    def test_apply_identity(self):
        r = np.array([0.3, 0.0, 0.0])
        assert np.array_equal(apply(identity_channel(), r), r)

    def test_apply_depolarizing(self):
        e = AffineChannel(np.zeros((3, 3)), np.zeros(3))
        assert np.array_equal(apply(e, [0.1, -0.5, 0.7]), np.zeros(3))

    def test_apply_gad(self):
        e = kraus_to_affine(gad_kraus(0.5, 1.0))
        assert np.allclose(apply(e, np.zeros(3)), [0.0, 0.0, 0.75], atol=1e-15)

    def test_apply_rejects_outside_ball(self):
        with pytest.raises(ValueError):
            apply(identity_channel(), [1.2, 0.0, 0.0])

    def test_compose_with_identity(self):
        e = kraus_to_affine(gad_kraus(-0.3, 0.2))
        for lhs, rhs in [(identity_channel(), e), (e, identity_channel())]:
            composed = compose(lhs, rhs)
            assert np.allclose(composed.m, e.m, atol=1e-15)
            assert np.allclose(composed.c, e.c, atol=1e-15)

    def test_compose_involution(self):
        flip = kraus_to_affine(KrausChannel([SIGMA_X]))
        composed = compose(flip, flip)
        assert np.allclose(composed.m, np.eye(3), atol=1e-15)

    def test_compose_matches_kraus_concatenation(self):
        rng = RngStream(777)
        for _ in range(20):
            k1 = random_channel(rng, 2)
            k2 = random_channel(rng, 3)
            products = [b @ a for b in k2.operators for a in k1.operators]
            via_kraus = kraus_to_affine(KrausChannel(products))
            via_affine = compose(kraus_to_affine(k2), kraus_to_affine(k1))
            assert np.max(np.abs(via_kraus.m - via_affine.m)) < 1e-10
            assert np.max(np.abs(via_kraus.c - via_affine.c)) < 1e-10

    def test_contraction_property(self):
        rng = RngStream(778)
        for _ in range(20):
            e = kraus_to_affine(random_channel(rng, 4))
            pts = ball_samples(rng, 200)
            images = pts @ e.m.T + e.c
            assert np.all(np.linalg.norm(images, axis=1) <= 1.0 + 1e-9)


class TestUnitaries:
    def test_identity_params(self):
        u = UnitaryParams(1.0, np.zeros(3))
        e = unitary_to_affine(u)
        assert np.array_equal(e.m, np.eye(3))
        assert np.array_equal(unitary_matrix(u), IDENTITY2)

    def test_sigma_x_params(self):
        u = UnitaryParams(0.0, np.array([1.0, 0.0, 0.0]))
        e = unitary_to_affine(u)
        assert np.allclose(e.m, np.diag([1.0, -1.0, -1.0]), atol=1e-15)
        direct = kraus_to_affine(KrausChannel([SIGMA_X]))
        assert np.allclose(e.m, direct.m, atol=1e-15)

    def test_i_sigma_z(self):
        u = UnitaryParams(0.0, np.array([0.0, 0.0, 1.0]))
        assert np.array_equal(unitary_matrix(u), 1j * SIGMA_Z)

    def test_rejects_non_unit(self):
        with pytest.raises(ValueError):
            UnitaryParams(1.0, np.array([0.1, 0.0, 0.0]))

    def test_rotation_is_special_orthogonal(self):
        rng = RngStream(779)
        for x in sphere4_samples(rng, 200):
            e = unitary_to_affine(UnitaryParams.from_vector(x))
            assert np.max(np.abs(e.m.T @ e.m - np.eye(3))) < 1e-12
            assert abs(np.linalg.det(e.m) - 1.0) < 1e-10

    def test_unitary_matrix_is_unitary(self):
        rng = RngStream(780)
        for x in sphere4_samples(rng, 100):
            v = unitary_matrix(UnitaryParams.from_vector(x))
            assert np.max(np.abs(v @ v.conj().T - IDENTITY2)) < 1e-12

    def test_conjugation_matches_affine(self):
        rng = RngStream(781)
        for x in sphere4_samples(rng, 50):
            u = UnitaryParams.from_vector(x)
            v = unitary_matrix(u)
            e = unitary_to_affine(u)
            for r in AXIS_STATES:
                rho_out = v @ density_of(r) @ v.conj().T
                assert np.allclose(bloch_of(rho_out), e.m @ r, atol=1e-12)


class TestChoi:
    def test_identity_channel(self):
        w = eig_herm4(choi(identity_channel()))
        assert np.allclose(w, [2.0, 0.0, 0.0, 0.0], atol=1e-12)

    def test_depolarizing(self):
        w = eig_herm4(choi(AffineChannel(np.zeros((3, 3)), np.zeros(3))))
        assert np.allclose(w, [0.5, 0.5, 0.5, 0.5], atol=1e-12)

    def test_trace_is_two(self):
        rng = RngStream(782)
        for _ in range(10):
            e = kraus_to_affine(random_channel(rng, 3))
            assert abs(np.trace(choi(e)).real - 2.0) < 1e-12

    @pytest.mark.parametrize(
        "probs", [(0.25, 0.25, 0.25, 0.25), (0.1, 0.6, 0.2, 0.1), (0.7, 0.0, 0.3, 0.0)]
    )
    def test_pauli_channel_spectrum(self, probs):
        ops = [np.sqrt(probs[0]) * IDENTITY2] + [
            np.sqrt(probs[i + 1]) * PAULIS[i] for i in range(3)
        ]
        k = KrausChannel(ops)
        # independent Kraus-form Choi: sum_ij |i><j| (x) E(|i><j|)
        reference = np.zeros((4, 4), dtype=complex)
        for i in range(2):
            for j in range(2):
                eij = np.zeros((2, 2), dtype=complex)
                eij[i, j] = 1.0
                reference += np.kron(eij, k.evaluate(eij))
        assert np.allclose(choi(kraus_to_affine(k)), reference, atol=1e-12)
        w = eig_herm4(reference)
        expected = np.sort(2.0 * np.asarray(probs))[::-1]
        assert np.allclose(w, expected, atol=1e-12)


class TestValidateCptp:
    def test_uniform_pauli_passes(self):
        ops = [0.5 * IDENTITY2] + [0.5 * s for s in PAULIS]
        report = validate_cptp(KrausChannel(ops))
        assert report.passed
        assert report.tp_residual < 1e-12
        assert report.min_choi_eigenvalue > -1e-12

    def test_reflection_fails(self):
        report = validate_cptp(AffineChannel(np.diag([1.0, 1.0, -1.0]), np.zeros(3)))
        assert not report.passed
        assert report.tp_exact
        assert report.tp_residual is None
        assert report.min_choi_eigenvalue < -0.1

    def test_random_channels_pass(self):
        rng = RngStream(783)
        for n_kraus in (1, 2, 3, 4):
            report = validate_cptp(random_channel(rng, n_kraus))
            assert report.passed

    def test_rejects_other_types(self):
        with pytest.raises(TypeError):
            validate_cptp(np.eye(3))


class TestRandomChannel:
    def test_tp_to_tolerance(self):
        rng = RngStream(784)
        for n_kraus in (1, 2, 3, 4):
            assert random_channel(rng, n_kraus).tp_residual() < 1e-10

    def test_unitary_case_is_orthogonal(self):
        rng = RngStream(785)
        for _ in range(20):
            e = kraus_to_affine(random_channel(rng, 1))
            assert np.max(np.abs(e.m.T @ e.m - np.eye(3))) < 1e-9

    def test_seed_determinism(self):
        ops_a = random_channel(RngStream(99), 3).operators
        ops_b = random_channel(RngStream(99), 3).operators
        for a, b in zip(ops_a, ops_b):
            assert np.array_equal(a, b)

    def test_rejects_bad_count(self):
        with pytest.raises(ValueError):
            random_channel(RngStream(0), 5)


class TestAffineChannelValidation:
    def test_rejects_large_translation(self):
        with pytest.raises(ValueError, match="translation"):
            AffineChannel(np.zeros((3, 3)), np.array([0.0, 0.0, 1.5]))

    def test_rejects_expanding_map(self):
        with pytest.raises(ValueError, match="singular value"):
            AffineChannel(np.diag([2.0, 0.0, 0.0]), np.zeros(3))

    def test_check_bloch_rejects_wrong_shape(self):
        with pytest.raises(ValueError):
            check_bloch([1.0, 0.0])


class TestPhaseDistance:
    def test_phase_invariance(self):
        v = unitary_matrix(UnitaryParams(0.6, np.array([0.8, 0.0, 0.0])))
        assert phase_distance(v, np.exp(1j * 1.2345) * v) < 1e-15

    def test_detects_difference(self):
        assert phase_distance(IDENTITY2, SIGMA_X) > 1.0
