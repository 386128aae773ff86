"""Reference detectors built on dense matrices.

They serve as BER references and as oracles for the recursive detector;
each one inverts a fresh regularized Gram matrix whenever the set of
undetected symbols changes.
"""

import logging
import typing

import numpy as np

from gstbc_detection.alamouti_linalg import FlopCounter, arithmetic, flop_scope
from gstbc_detection.channel_model import (
    EquivalentChannel,
    ReceivedVector,
    Slicer,
    qpsk_slice,
)
from gstbc_detection.detectors import dense
from gstbc_detection.detectors.recursive import check_alpha, check_dimensions
from gstbc_detection.detectors.workspace import DetectionResult

logger = logging.getLogger(__name__)


def _prepare(
    hp: EquivalentChannel, x: ReceivedVector, alpha: float
) -> typing.Tuple[np.ndarray, np.ndarray, int]:
    _, n_layers = check_dimensions(hp, x)
    check_alpha(alpha)

    return (
        np.asarray(hp, dtype=complex),
        np.asarray(x, dtype=complex),
        n_layers,
    )


def _cancel_symbol(
    residual: np.ndarray, column: np.ndarray, decision: complex
) -> np.ndarray:
    return arithmetic.csub(residual, arithmetic.cmul(column, decision))


def _detect_symbol(
    matrix: np.ndarray,
    residual: np.ndarray,
    columns: typing.List[int],
    alpha: float,
    choose: typing.Callable[[np.ndarray], int],
) -> typing.Tuple[int, complex]:
    """MMSE estimate of one symbol among ``columns``.

    ``choose`` picks the position within ``columns`` from the real
    diagonal of the current covariance matrix.
    """
    selected = matrix[:, columns]
    covariance = dense.mmse_covariance(selected, alpha)
    position = choose(np.real(np.diagonal(covariance)))
    matched = arithmetic.cmatvec_h(selected, residual)

    return position, dense.mmse_row_estimate(covariance, matched, position)


def detect_linear_mmse(
    hp: EquivalentChannel,
    x: ReceivedVector,
    alpha: float,
    slicer: Slicer = qpsk_slice,
) -> DetectionResult:
    """``(H^H H + alpha I)^-1 H^H x`` followed by slicing."""
    matrix, received, _ = _prepare(hp, x, alpha)

    counter = FlopCounter()
    with flop_scope(counter):
        covariance = dense.mmse_covariance(matrix, alpha)
        soft = dense.cmatvec(
            covariance, arithmetic.cmatvec_h(matrix, received)
        )

    decisions = np.array([slicer(value) for value in soft], dtype=complex)

    return DetectionResult(decisions, soft, (), counter.snapshot())


def detect_osic_symbolwise(
    hp: EquivalentChannel,
    x: ReceivedVector,
    alpha: float,
    slicer: Slicer = qpsk_slice,
) -> DetectionResult:
    """Symbol-wise MMSE-OSIC over the ``2M`` columns of ``H'``.

    Each step recomputes the covariance of the remaining symbols and
    detects the one with the least error variance.
    """
    matrix, residual, n_layers = _prepare(hp, x, alpha)
    remaining = list(range(2 * n_layers))
    decisions = np.zeros(2 * n_layers, dtype=complex)
    soft = np.zeros(2 * n_layers, dtype=complex)
    detected = []

    counter = FlopCounter()
    with flop_scope(counter):
        while remaining:
            position, estimate = _detect_symbol(
                matrix,
                residual,
                remaining,
                alpha,
                lambda variances: int(np.argmin(variances)),
            )
            symbol = remaining.pop(position)
            soft[symbol] = estimate
            decisions[symbol] = slicer(estimate)
            detected.append(symbol)

            if remaining:
                residual = _cancel_symbol(
                    residual, matrix[:, symbol], decisions[symbol]
                )

    return DetectionResult(decisions, soft, tuple(detected), counter.snapshot())


def detect_sic_groupwise_symbolwise(
    hp: EquivalentChannel,
    x: ReceivedVector,
    alpha: float,
    slicer: Slicer = qpsk_slice,
) -> DetectionResult:
    """Layers chosen group-wise, symbols detected one at a time.

    The layer order follows the recursive detector (least error variance
    of the layer's second symbol, same swap bookkeeping); within a layer
    the second symbol is detected and cancelled before the first one.
    """
    matrix, residual, n_layers = _prepare(hp, x, alpha)
    p = list(range(n_layers))
    decisions = np.zeros(2 * n_layers, dtype=complex)
    soft = np.zeros(2 * n_layers, dtype=complex)
    detected = []

    def columns_of(layers: typing.Sequence[int]) -> typing.List[int]:
        return [2 * layer + k for layer in layers for k in (0, 1)]

    def last_position(_: np.ndarray) -> int:
        return len(columns) - 1

    counter = FlopCounter()
    with flop_scope(counter):
        for depth in range(n_layers, 0, -1):
            if depth > 1:
                covariance = dense.mmse_covariance(
                    matrix[:, columns_of(p[:depth])], alpha
                )
                chosen = int(np.argmin(np.real(np.diagonal(covariance))[1::2]))
                p[chosen], p[depth - 1] = p[depth - 1], p[chosen]

            columns = columns_of(p[:depth])
            while len(columns) > 2 * (depth - 1):
                _, estimate = _detect_symbol(
                    matrix, residual, columns, alpha, last_position
                )
                symbol = columns.pop()
                soft[symbol] = estimate
                decisions[symbol] = slicer(estimate)
                detected.append(symbol)

                if columns:
                    residual = _cancel_symbol(
                        residual, matrix[:, symbol], decisions[symbol]
                    )

            logger.debug("depth %d: layer %d", depth, p[depth - 1])

    return DetectionResult(decisions, soft, tuple(detected), counter.snapshot())
