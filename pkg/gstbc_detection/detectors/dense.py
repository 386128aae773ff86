"""Dense complex linear algebra charged at textbook cost.

Products cost one complex multiply per term; an ``n x n`` inversion is
charged as Gauss-Jordan elimination, ``n^3`` complex mults and ``n^3``
complex adds.
"""

import numpy as np

from gstbc_detection.alamouti_linalg import arithmetic, charge, charge_complex


def cmatmul(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    rows, inner = left.shape
    cols = right.shape[1]
    charge_complex(
        mults=rows * inner * cols, adds=rows * cols * max(inner - 1, 0)
    )

    return left @ right


def cmatvec(matrix: np.ndarray, vector: np.ndarray) -> np.ndarray:
    rows, cols = matrix.shape
    charge_complex(mults=rows * cols, adds=rows * max(cols - 1, 0))

    return matrix @ vector


def cinv(matrix: np.ndarray) -> np.ndarray:
    size = matrix.shape[0]
    charge_complex(mults=size**3, adds=size**3)

    return np.linalg.inv(matrix)


def regularized_gram(columns: np.ndarray, alpha: float) -> np.ndarray:
    """``H^H H + alpha I``; adding ``alpha`` costs one real add per row."""
    size = columns.shape[1]
    gram = cmatmul(columns.conj().T, columns)
    charge(real_adds=size)

    return gram + alpha * np.eye(size)


def mmse_covariance(columns: np.ndarray, alpha: float) -> np.ndarray:
    return cinv(regularized_gram(columns, alpha))


def mmse_row_estimate(
    covariance: np.ndarray, matched: np.ndarray, index: int
) -> complex:
    """Entry ``index`` of ``Q (H^H x)`` without forming the other rows."""
    return arithmetic.cdot(np.conj(covariance[index]), matched)
