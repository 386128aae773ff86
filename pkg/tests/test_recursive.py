import numpy as np
import pytest

from gstbc_detection.alamouti_linalg import (
    StructuredHermitianBlockMatrix,
    sbm_from_dense,
)
from gstbc_detection.channel_model import (
    ChannelMatrix,
    EquivalentChannel,
    ReceivedVector,
    build_equivalent,
)
from gstbc_detection.detectors import (
    DetectorWorkspace,
    cancel_layer,
    deflate_covariance,
    detect_gstbc,
    estimate_layer,
    init_covariance,
    init_gram,
    initialize_workspace,
    matched_filter,
    permute_workspace,
    select_layer,
)
from gstbc_detection.exceptions import (
    InvalidDimensions,
    NonPositiveAlpha,
    SingularPivot,
)


def workspace_with_q(diag, upper=None):
    m = len(diag)
    if upper is None:
        upper = np.zeros((m, m, 2))

    return DetectorWorkspace(
        m=m,
        rbar=StructuredHermitianBlockMatrix.identity(m),
        qbar=StructuredHermitianBlockMatrix(diag, upper),
        z=np.zeros(2 * m),
        p=tuple(range(m)),
        alpha=1.0,
    )


def remaining_symbols(symbols, ws):
    """Entries of s' belonging to the undetected layers, permuted."""
    blocks = np.asarray(symbols).reshape(-1, 2)

    return blocks[list(ws.remaining_layers)].reshape(-1)


class TestMatchedFilter:
    def test_zero_received(self, make_instance):
        instance = make_instance(2, 3)
        zero = ReceivedVector(np.zeros(6))

        np.testing.assert_array_equal(
            matched_filter(instance.hp, zero), np.zeros(4)
        )

    def test_identity_channel(self, rng):
        x = rng.standard_normal(4) + 1j * rng.standard_normal(4)

        np.testing.assert_allclose(
            matched_filter(EquivalentChannel(np.eye(4)), ReceivedVector(x)), x
        )

    def test_dense_oracle(self, make_instance):
        instance = make_instance(3, 4, sigma_n2=0.2)
        hp = np.asarray(instance.hp)

        np.testing.assert_allclose(
            matched_filter(instance.hp, instance.x),
            hp.conj().T @ np.asarray(instance.x),
        )

    def test_length_mismatch(self, make_instance):
        instance = make_instance(2, 2)

        with pytest.raises(InvalidDimensions):
            matched_filter(instance.hp, ReceivedVector(np.zeros(6)))


class TestInitGram:
    def test_zero_channel(self):
        zero = build_equivalent(ChannelMatrix(np.zeros((3, 6))))
        rbar = init_gram(zero, 0.4)

        np.testing.assert_allclose(rbar.diag, [0.4, 0.4, 0.4])
        np.testing.assert_array_equal(rbar.upper, np.zeros((3, 3, 2)))

    def test_single_layer(self, rng):
        gains = rng.standard_normal((3, 2)) + 1j * rng.standard_normal((3, 2))
        rbar = init_gram(build_equivalent(ChannelMatrix(gains)), 0.1)

        assert rbar.diag[0] == pytest.approx(np.sum(np.abs(gains) ** 2) + 0.1)

    def test_dense_oracle(self, make_instance, oracles):
        for n_layers, n_rx in ((2, 2), (3, 5), (5, 5)):
            hp = make_instance(n_layers, n_rx).hp
            expected = oracles.gram(hp, 0.3)

            np.testing.assert_allclose(
                init_gram(hp, 0.3).dense(), expected, rtol=1e-12, atol=1e-12
            )

    @pytest.mark.parametrize("alpha", [0.0, -1.0])
    def test_non_positive_alpha(self, make_instance, alpha):
        with pytest.raises(NonPositiveAlpha):
            init_gram(make_instance(2, 2).hp, alpha)


class TestInitCovariance:
    def test_zero_channel(self):
        zero = build_equivalent(ChannelMatrix(np.zeros((4, 8))))
        rbar = init_gram(zero, 0.5)

        np.testing.assert_allclose(init_covariance(rbar).dense(), 2 * np.eye(8))

    def test_single_layer(self, make_instance):
        rbar = init_gram(make_instance(1, 2).hp, 0.2)

        np.testing.assert_allclose(
            init_covariance(rbar).dense(), np.eye(2) / rbar.diag[0]
        )

    @pytest.mark.parametrize(
        "trials", [pytest.param(100, marks=pytest.mark.slow), 10]
    )
    def test_dense_inverse_oracle(self, make_instance, oracles, trials):
        for n_layers in range(1, 9):
            for n_rx in range(n_layers, 9):
                for _ in range(trials):
                    rbar = init_gram(make_instance(n_layers, n_rx).hp, 0.1)
                    expected = np.linalg.inv(rbar.dense())

                    assert (
                        oracles.relative_error(
                            init_covariance(rbar).dense(), expected
                        )
                        <= 1e-10
                    )

    def test_indefinite_matrix(self):
        upper = np.zeros((2, 2, 2), dtype=complex)
        upper[0, 1] = (2, 0)

        with pytest.raises(SingularPivot):
            init_covariance(StructuredHermitianBlockMatrix([1, 1], upper))


class TestSelectLayer:
    def test_least_error(self):
        assert select_layer(workspace_with_q([3, 1, 2])) == 4

    def test_ties_favour_first_layer(self):
        assert select_layer(workspace_with_q([2, 2, 2])) == 2

    def test_dense_inverse_oracle(self, make_instance):
        for _ in range(20):
            instance = make_instance(4, 5, sigma_n2=0.1)
            ws = initialize_workspace(instance.hp, instance.x, 0.1)
            diagonal = np.real(np.diagonal(np.linalg.inv(ws.rbar.dense())))

            assert select_layer(ws) == 2 * (np.argmin(diagonal[1::2]) + 1)


class TestPermuteWorkspace:
    @pytest.fixture
    def workspace(self, make_instance):
        instance = make_instance(4, 4, sigma_n2=0.1)

        return initialize_workspace(instance.hp, instance.x, 0.1)

    def test_last_layer_is_kept(self, workspace):
        assert permute_workspace(workspace, 8) is workspace

    def test_involution(self, workspace):
        twice = permute_workspace(permute_workspace(workspace, 4), 4)

        np.testing.assert_allclose(twice.rbar.dense(), workspace.rbar.dense())
        np.testing.assert_allclose(twice.qbar.dense(), workspace.qbar.dense())
        np.testing.assert_array_equal(twice.z, workspace.z)
        assert twice.p == workspace.p

    def test_dense_oracle(self, workspace, oracles):
        permuted = permute_workspace(workspace, 4)
        swap = oracles.swap_matrix(4, 1, 3)

        np.testing.assert_allclose(
            permuted.rbar.dense(), swap @ workspace.rbar.dense() @ swap.T
        )
        np.testing.assert_allclose(
            permuted.qbar.dense(), swap @ workspace.qbar.dense() @ swap.T
        )
        np.testing.assert_allclose(permuted.z, swap @ workspace.z)
        assert permuted.p == (0, 3, 2, 1)

    @pytest.mark.parametrize("l_m", [0, 3, 10])
    def test_invalid_index(self, workspace, l_m):
        with pytest.raises(InvalidDimensions):
            permute_workspace(workspace, l_m)


class TestEstimateLayer:
    def test_zero_matched_filter(self, make_instance):
        instance = make_instance(3, 3)
        ws = initialize_workspace(
            instance.hp, ReceivedVector(np.zeros(6)), 0.1
        )

        assert estimate_layer(ws) == (0, 0)

    def test_scalar_case(self):
        ws = workspace_with_q([0.5])
        ws = DetectorWorkspace(
            1, ws.rbar, ws.qbar, np.array([2 + 2j, -4j]), (0,), 1.0
        )

        assert estimate_layer(ws) == (1 + 1j, -2j)

    def test_dense_oracle(self, make_instance):
        instance = make_instance(3, 4, sigma_n2=0.1)
        ws = initialize_workspace(instance.hp, instance.x, 0.1)

        expected = ws.qbar.dense() @ ws.z
        np.testing.assert_allclose(estimate_layer(ws), expected[-2:])


class TestCancelLayer:
    def test_no_decision_truncates(self, make_instance):
        instance = make_instance(3, 3, sigma_n2=0.1)
        ws = initialize_workspace(instance.hp, instance.x, 0.1)

        np.testing.assert_allclose(cancel_layer(ws, 0, 0).z, ws.z[:4])

    def test_uncoupled_layer_truncates(self):
        ws = workspace_with_q([1.0, 1.0])
        ws = DetectorWorkspace(
            2, ws.rbar, ws.qbar, np.array([1, 2j, 3, 4j]), (0, 1), 1.0
        )

        np.testing.assert_allclose(cancel_layer(ws, 1 + 1j, 5).z, [1, 2j])

    def test_noiseless_correct_decision(self, make_instance):
        instance = make_instance(3, 4)
        ws = permute_workspace(
            initialize_workspace(instance.hp, instance.x, 0.1), 2
        )
        last = ws.p[-1]
        sent = np.asarray(instance.symbols)[2 * last : 2 * last + 2]

        reduced = cancel_layer(ws, *sent)
        columns = [2 * i + k for i in reduced.remaining_layers for k in (0, 1)]
        hbar = np.asarray(instance.hp)[:, columns]
        expected = hbar.conj().T @ hbar @ np.asarray(instance.symbols)[columns]

        np.testing.assert_allclose(reduced.z, expected, atol=1e-12)
        assert reduced.m == 2
        np.testing.assert_allclose(
            reduced.rbar.dense(), ws.rbar.dense()[:4, :4]
        )

    def test_last_layer(self):
        with pytest.raises(InvalidDimensions):
            cancel_layer(workspace_with_q([1.0]), 1, 1)


class TestDeflateCovariance:
    def test_block_diagonal(self):
        ws = workspace_with_q([1.0, 2.0, 3.0])

        np.testing.assert_allclose(
            deflate_covariance(ws).dense(), np.diag([1, 1, 2, 2])
        )

    def test_scaled_identity(self):
        ws = workspace_with_q([0.25, 0.25])

        np.testing.assert_allclose(
            deflate_covariance(ws).dense(), 0.25 * np.eye(2)
        )

    def test_dense_inverse_oracle(self, make_instance, oracles):
        for _ in range(20):
            instance = make_instance(4, 4, sigma_n2=0.1)
            ws = initialize_workspace(instance.hp, instance.x, 0.1)
            expected = np.linalg.inv(ws.rbar.dense()[:6, :6])

            assert (
                oracles.relative_error(deflate_covariance(ws).dense(), expected)
                <= 1e-9
            )


class TestRecursionInvariants:
    """Checks at every depth, through the observer hook."""

    @pytest.mark.parametrize(
        "instances", [pytest.param(1000, marks=pytest.mark.slow), 50]
    )
    def test_inverse_and_structure(self, make_instance, oracles, instances):
        depths = []

        def observe(ws):
            rbar, qbar = ws.rbar.dense(), ws.qbar.dense()
            expected = np.linalg.inv(rbar)

            assert oracles.relative_error(qbar, expected) <= 1e-9
            np.testing.assert_allclose(
                rbar @ qbar, np.eye(2 * ws.m), atol=1e-9
            )
            sbm_from_dense(rbar, tol=1e-9)
            sbm_from_dense(qbar, tol=1e-9)
            depths.append(ws.m)

        for _ in range(instances):
            instance = make_instance(4, 4, sigma_n2=0.1)
            detect_gstbc(instance.hp, instance.x, 0.1, observer=observe)

        assert depths == [4, 3, 2, 1] * instances

    @pytest.mark.parametrize(
        "instances", [pytest.param(100, marks=pytest.mark.slow), 30]
    )
    def test_noiseless_soft_estimates(self, make_instance, instances):
        alpha = 1e-3
        checked = 0

        for _ in range(instances):
            instance = make_instance(3, 5)
            snapshots = []
            result = detect_gstbc(
                instance.hp, instance.x, alpha, observer=snapshots.append
            )
            if not np.allclose(result.decisions, np.asarray(instance.symbols)):
                continue

            for ws in snapshots:
                qbar = ws.qbar.dense()
                mixing = np.eye(2 * ws.m) - alpha * qbar
                expected = mixing @ remaining_symbols(instance.symbols, ws)

                np.testing.assert_allclose(qbar @ ws.z, expected, atol=1e-9)
                layer = ws.p[ws.m - 1]
                np.testing.assert_allclose(
                    result.soft[2 * layer : 2 * layer + 2],
                    expected[-2:],
                    atol=1e-9,
                )
                within_layer = np.diagonal(mixing[0::2, 1::2])
                assert np.max(np.abs(within_layer)) <= 1e-12
            checked += 1

        assert checked >= 0.9 * instances
