"""Fast recursive group-wise MMSE-OSIC detection.

Initialization computes ``z = H^H x'``, the structured Gram matrix
``R = H'^H H' + alpha I`` and its inverse ``Q`` by bordering one layer
at a time. The recursion then repeatedly picks the layer with the least
mean-square error, estimates its two symbols from ``Q`` and ``z``,
cancels them in ``z`` and deflates ``Q`` to the remaining layers. All
matrices stay in compressed Alamouti form throughout.
"""

import dataclasses
import logging
import typing

import numpy as np

from gstbc_detection.alamouti_linalg import (
    BlockColumnVector,
    FlopCounter,
    StructuredHermitianBlockMatrix,
    arithmetic,
    block_matvec,
    flop_scope,
    hermitian_update,
)
from gstbc_detection.channel_model import (
    EquivalentChannel,
    ReceivedVector,
    Slicer,
    qpsk_slice,
)
from gstbc_detection.configuration import Configuration
from gstbc_detection.detectors.workspace import (
    DetectionResult,
    DetectorWorkspace,
)
from gstbc_detection.exceptions import (
    InvalidDimensions,
    NonPositiveAlpha,
    SingularPivot,
)

logger = logging.getLogger(__name__)

LayerChooser = typing.Callable[[DetectorWorkspace], int]
WorkspaceObserver = typing.Callable[[DetectorWorkspace], None]

_configuration = Configuration.Detectors


def check_alpha(alpha: float) -> None:
    if not alpha > 0:
        raise NonPositiveAlpha(f"alpha={alpha} must be strictly positive")


def check_dimensions(
    hp: EquivalentChannel, x: typing.Optional[ReceivedVector] = None
) -> typing.Tuple[int, int]:
    """Return ``(N, M)`` after checking ``H'`` against ``x'``."""
    rows, cols = np.shape(hp)
    if rows % 2 or cols % 2 or cols < 2:
        raise InvalidDimensions(f"H' of shape {(rows, cols)} is not 2N x 2M")
    if rows < cols:
        raise InvalidDimensions(
            f"N={rows // 2} receive antennas cannot separate M={cols // 2}"
            " layers"
        )
    if x is not None and np.shape(x) != (rows,):
        raise InvalidDimensions(
            f"x' of shape {np.shape(x)} does not match H' with {rows} rows"
        )

    return rows // 2, cols // 2


def _pivot(value: float, scale: float) -> float:
    if not np.isfinite(value) or value <= _configuration.PIVOT_TOLERANCE * scale:
        raise SingularPivot(
            f"pivot {value:.3e} lost positive definiteness (scale"
            f" {scale:.3e})"
        )

    return value


def matched_filter(hp: EquivalentChannel, x: ReceivedVector) -> np.ndarray:
    check_dimensions(hp, x)

    return arithmetic.cmatvec_h(
        np.asarray(hp, dtype=complex), np.asarray(x, dtype=complex)
    )


def init_gram(
    hp: EquivalentChannel, alpha: float
) -> StructuredHermitianBlockMatrix:
    """``R_M = H^H H + alpha I`` from one column inner product per
    compressed entry."""
    check_alpha(alpha)
    matrix = np.asarray(hp, dtype=complex)
    first, second = matrix[:, 0::2], matrix[:, 1::2]
    m = first.shape[1]

    diag = arithmetic.radd(arithmetic.column_energy(first), np.full(m, alpha))

    upper = np.zeros((m, m, 2), dtype=complex)
    rows, cols = np.triu_indices(m, 1)
    if rows.size:
        upper[rows, cols, 0] = arithmetic.column_inner(
            first[:, rows], first[:, cols]
        )
        upper[rows, cols, 1] = arithmetic.column_inner(
            second[:, rows], first[:, cols]
        )

    return StructuredHermitianBlockMatrix(diag, upper)


def init_covariance(
    rbar: StructuredHermitianBlockMatrix,
) -> StructuredHermitianBlockMatrix:
    """``Q_M = R_M^-1`` by bordering ``Q_1 = I / r_1`` one layer at a time."""
    scale = float(np.mean(rbar.diag))
    qbar = StructuredHermitianBlockMatrix.identity(
        1, arithmetic.reciprocal(_pivot(rbar.diag[0], scale))
    )

    for k in range(1, rbar.m):
        v = rbar.column_above(k)
        u = block_matvec(qbar, v)

        # Only the first column of the bordering block column is needed.
        quadratic = arithmetic.cdot(v.first_column(), u.first_column())
        if abs(quadratic.imag) > _configuration.REALITY_TOLERANCE * max(
            abs(quadratic.real), rbar.diag[k]
        ):
            raise SingularPivot(
                f"quadratic form {quadratic} of layer {k} is not real"
            )

        denominator = float(arithmetic.rsub(rbar.diag[k], quadratic.real))
        omega = arithmetic.reciprocal(_pivot(denominator, scale))
        w = BlockColumnVector(arithmetic.pair_scale(-omega, u.pairs))

        # omega^-1 w = -u, hence T = Q + omega^-1 w w^H = Q - u w^H.
        t = hermitian_update(qbar, u, w)
        qbar = t.bordered(w, omega)

    return qbar


def initialize_workspace(
    hp: EquivalentChannel, x: ReceivedVector, alpha: float
) -> DetectorWorkspace:
    _, n_layers = check_dimensions(hp, x)
    check_alpha(alpha)

    z = matched_filter(hp, x)
    rbar = init_gram(hp, alpha)
    qbar = init_covariance(rbar)

    return DetectorWorkspace(
        n_layers, rbar, qbar, z, tuple(range(n_layers)), alpha
    )


def select_layer(ws: DetectorWorkspace) -> int:
    """Even 1-based index ``l_m`` of the layer with the least MSE.

    The diagonal blocks of ``Q`` are scalar multiples of ``I_2``, so one
    scalar per block is scanned; the first minimum wins ties.
    """
    return 2 * (int(np.argmin(ws.qbar.diag)) + 1)


def keep_natural_order(ws: DetectorWorkspace) -> int:
    return 2 * ws.m


def permute_workspace(ws: DetectorWorkspace, l_m: int) -> DetectorWorkspace:
    """Swap block ``l_m / 2`` with block ``m`` in ``R``, ``Q``, ``z`` and
    ``p``."""
    if l_m % 2 or not 2 <= l_m <= 2 * ws.m:
        raise InvalidDimensions(
            f"l_m={l_m} is not an even index within depth {ws.m}"
        )

    chosen, last = l_m // 2 - 1, ws.m - 1
    if chosen == last:
        return ws

    permutation = np.arange(ws.m)
    permutation[[chosen, last]] = permutation[[last, chosen]]
    p = list(ws.p)
    p[chosen], p[last] = p[last], p[chosen]

    return dataclasses.replace(
        ws,
        rbar=ws.rbar.permuted(permutation),
        qbar=ws.qbar.permuted(permutation),
        z=ws.z_blocks[permutation].reshape(-1),
        p=tuple(p),
    )


def estimate_layer(ws: DetectorWorkspace) -> typing.Tuple[complex, complex]:
    """The last two entries of ``Q_|m z_m``."""
    last = ws.m - 1
    z = ws.z_blocks

    estimate = arithmetic.pair_scale(ws.qbar.diag[last], z[last])
    if last:
        row = arithmetic.pair_adjoint(ws.qbar.upper[:last, last])
        terms = arithmetic.pair_apply(row, z[:last])
        estimate = arithmetic.cadd(
            estimate,
            arithmetic.segment_sum(terms, np.zeros(last, dtype=int), 1)[0],
        )

    return complex(estimate[0]), complex(estimate[1])


def deflate_covariance(
    ws: DetectorWorkspace,
) -> StructuredHermitianBlockMatrix:
    """``Q_|m-1 = T_|m-1 - w w^H / omega`` from the partition of ``Q_|m``."""
    if ws.m < 2:
        raise InvalidDimensions("nothing left to deflate at depth 1")

    last = ws.m - 1
    omega = _pivot(
        float(ws.qbar.diag[last]), float(np.max(ws.qbar.diag))
    )
    w = ws.qbar.column_above(last)
    scaled = BlockColumnVector(
        arithmetic.pair_scale(arithmetic.reciprocal(omega), w.pairs)
    )

    return hermitian_update(ws.qbar.leading(last), scaled, w)


def cancel_layer(
    ws: DetectorWorkspace, s1hat: complex, s2hat: complex
) -> DetectorWorkspace:
    """Remove the decided layer from ``z`` and shrink the workspace.

    ``R_|m-1`` is the leading block submatrix of ``R_|m`` and ``Q_|m-1``
    comes from :func:`deflate_covariance`.
    """
    if ws.m < 2:
        raise InvalidDimensions("the last layer has nothing to cancel from")

    last = ws.m - 1
    qbar = deflate_covariance(ws)

    decided = np.broadcast_to(
        np.array([s1hat, s2hat], dtype=complex), (last, 2)
    )
    interference = arithmetic.pair_apply(
        ws.rbar.upper[:last, last], decided
    )
    z = arithmetic.pair_sub(ws.z_blocks[:last], interference)

    return dataclasses.replace(
        ws,
        m=last,
        rbar=ws.rbar.leading(last),
        qbar=qbar,
        z=z.reshape(-1),
    )


def _detect_groupwise(
    hp: EquivalentChannel,
    x: ReceivedVector,
    alpha: float,
    slicer: Slicer,
    choose: LayerChooser,
    observer: typing.Optional[WorkspaceObserver],
) -> DetectionResult:
    _, n_layers = check_dimensions(hp, x)
    check_alpha(alpha)

    decisions = np.zeros(2 * n_layers, dtype=complex)
    soft = np.zeros(2 * n_layers, dtype=complex)
    detected = []

    counter = FlopCounter()
    with flop_scope(counter):
        ws = initialize_workspace(hp, x, alpha)

        for depth in range(n_layers, 0, -1):
            if depth > 1:
                ws = permute_workspace(ws, choose(ws))
            if observer is not None:
                observer(ws)

            estimates = estimate_layer(ws)
            hard = (slicer(estimates[0]), slicer(estimates[1]))

            layer = ws.p[depth - 1]
            soft[2 * layer : 2 * layer + 2] = estimates
            decisions[2 * layer : 2 * layer + 2] = hard
            detected.append(layer)
            logger.debug(
                "depth %d: layer %d, mse %.4e", depth, layer, ws.qbar.diag[-1]
            )

            if depth > 1:
                ws = cancel_layer(ws, *hard)

    return DetectionResult(decisions, soft, tuple(detected), counter.snapshot())


def detect_gstbc(
    hp: EquivalentChannel,
    x: ReceivedVector,
    alpha: float,
    slicer: Slicer = qpsk_slice,
    observer: typing.Optional[WorkspaceObserver] = None,
) -> DetectionResult:
    """Group-wise MMSE-OSIC with optimal layer ordering."""
    return _detect_groupwise(hp, x, alpha, slicer, select_layer, observer)


def detect_fixed_order(
    hp: EquivalentChannel,
    x: ReceivedVector,
    alpha: float,
    slicer: Slicer = qpsk_slice,
    observer: typing.Optional[WorkspaceObserver] = None,
) -> DetectionResult:
    """The same recursion, always detecting the last undetected layer."""
    return _detect_groupwise(
        hp, x, alpha, slicer, keep_natural_order, observer
    )
