"""Hermitian block matrices built from 2x2 Alamouti blocks.

The matrices ``R = H^H H + alpha I`` and ``Q = R^-1`` of a G-STBC
equivalent channel have real scalar multiples of ``I_2`` on their block
diagonal and Alamouti blocks everywhere else. Storing only the diagonal
scalars and the strictly upper compressed blocks is what makes the
recursive detector cheap; dense forms exist for oracles only.
"""

import dataclasses
import typing

import numpy as np

from gstbc_detection.alamouti_linalg import arithmetic
from gstbc_detection.alamouti_linalg.blocks import AlamoutiBlock
from gstbc_detection.configuration import Configuration
from gstbc_detection.exceptions import InvalidDimensions, StructureViolation


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)

    return array


def _expand_pairs(pairs: np.ndarray) -> np.ndarray:
    rows, cols = pairs.shape[:2]
    a1, a2 = pairs[..., 0], pairs[..., 1]

    dense = np.zeros((2 * rows, 2 * cols), dtype=complex)
    dense[0::2, 0::2] = a1
    dense[0::2, 1::2] = -np.conj(a2)
    dense[1::2, 0::2] = a2
    dense[1::2, 1::2] = np.conj(a1)

    return dense


@dataclasses.dataclass(frozen=True, eq=False)
class BlockColumnVector:
    """A column of ``m`` Alamouti blocks, stored as an ``(m, 2)`` array."""

    pairs: np.ndarray

    def __post_init__(self) -> None:
        pairs = np.array(self.pairs, dtype=complex).reshape(-1, 2)
        object.__setattr__(self, "pairs", _frozen(pairs))

    @property
    def m(self) -> int:
        return self.pairs.shape[0]

    def block(self, index: int) -> AlamoutiBlock:
        return AlamoutiBlock.from_pair(self.pairs[index])

    def first_column(self) -> np.ndarray:
        """The ``2m`` vector holding the first column of the dense form."""
        return self.pairs.reshape(-1)

    def dense(self) -> np.ndarray:
        return _expand_pairs(self.pairs[:, np.newaxis, :])


@dataclasses.dataclass(frozen=True, eq=False)
class StructuredHermitianBlockMatrix:
    """``m x m`` grid of 2x2 blocks: ``diag[i] * I_2`` on the diagonal and
    Alamouti blocks ``upper[i, j]`` for ``i < j``; block ``(j, i)`` is the
    adjoint of block ``(i, j)``.
    """

    diag: np.ndarray
    upper: np.ndarray

    def __post_init__(self) -> None:
        diag = np.array(self.diag, dtype=float).reshape(-1)
        m = diag.size
        upper = np.array(self.upper, dtype=complex)

        if upper.size == 0 and m <= 1:
            upper = np.zeros((m, m, 2), dtype=complex)
        if upper.shape != (m, m, 2):
            raise InvalidDimensions(
                f"upper blocks of shape {upper.shape} do not match m={m}"
            )
        if np.any(diag < 0) or not np.all(np.isfinite(diag)):
            raise StructureViolation(
                "diagonal blocks must be nonnegative finite multiples of I_2"
            )

        upper = upper * np.triu(np.ones((m, m)), 1)[..., np.newaxis]

        object.__setattr__(self, "diag", _frozen(diag))
        object.__setattr__(self, "upper", _frozen(upper))

    @classmethod
    def identity(
        cls, m: int, scale: float = 1.0
    ) -> "StructuredHermitianBlockMatrix":
        return cls(np.full(m, scale), np.zeros((m, m, 2), dtype=complex))

    @classmethod
    def from_pairs(
        cls, pairs: np.ndarray
    ) -> "StructuredHermitianBlockMatrix":
        return cls(np.real(np.diagonal(pairs[..., 0])), pairs)

    @property
    def m(self) -> int:
        return self.diag.size

    def pairs(self) -> np.ndarray:
        """All ``m x m`` compressed blocks, lower triangle included."""
        full = self.upper + arithmetic.pair_adjoint(self.upper).transpose(
            1, 0, 2
        )
        index = np.arange(self.m)
        full[index, index, 0] = self.diag
        full[index, index, 1] = 0

        return full

    def block(self, row: int, col: int) -> AlamoutiBlock:
        return AlamoutiBlock.from_pair(self.pairs()[row, col])

    def column_above(self, col: int) -> BlockColumnVector:
        """Blocks ``(0..col-1, col)``: the bordering column of the leading
        ``col x col`` submatrix."""
        return BlockColumnVector(self.upper[:col, col])

    def leading(self, size: int) -> "StructuredHermitianBlockMatrix":
        return StructuredHermitianBlockMatrix(
            self.diag[:size], self.upper[:size, :size]
        )

    def permuted(
        self, permutation: typing.Sequence[int]
    ) -> "StructuredHermitianBlockMatrix":
        """Block rows and columns reordered as ``P A P^T``."""
        permutation = np.asarray(permutation)
        full = self.pairs()[permutation][:, permutation]

        return StructuredHermitianBlockMatrix.from_pairs(full)

    def bordered(
        self, column: BlockColumnVector, corner: float
    ) -> "StructuredHermitianBlockMatrix":
        """``[[A, c], [c^H, corner * I_2]]``."""
        m = self.m
        upper = np.zeros((m + 1, m + 1, 2), dtype=complex)
        upper[:m, :m] = self.upper
        upper[:m, m] = column.pairs

        return StructuredHermitianBlockMatrix(
            np.append(self.diag, corner), upper
        )

    def dense(self) -> np.ndarray:
        return _expand_pairs(self.pairs())


def sbm_to_dense(matrix: StructuredHermitianBlockMatrix) -> np.ndarray:
    return matrix.dense()


def sbm_from_dense(
    dense: np.ndarray, tol: float = Configuration.Linalg.STRUCTURE_TOLERANCE
) -> StructuredHermitianBlockMatrix:
    dense = np.asarray(dense, dtype=complex)
    rows, cols = dense.shape
    if rows != cols or rows % 2:
        raise InvalidDimensions(
            f"expected a square matrix of even size, got {dense.shape}"
        )

    deviation = np.abs(dense - dense.conj().T)
    if np.any(deviation > tol):
        row, col = np.unravel_index(np.argmax(deviation), deviation.shape)
        raise StructureViolation(
            f"matrix is not Hermitian at entry ({row}, {col})"
        )

    a1 = dense[0::2, 0::2]
    a2 = dense[1::2, 0::2]
    pattern_deviation = np.maximum(
        np.abs(dense[0::2, 1::2] + np.conj(a2)),
        np.abs(dense[1::2, 1::2] - np.conj(a1)),
    )
    if np.any(pattern_deviation > tol):
        row, col = np.unravel_index(
            np.argmax(pattern_deviation), pattern_deviation.shape
        )
        raise StructureViolation(
            f"block ({row}, {col}) is not of the Alamouti form"
        )

    diagonal = np.diagonal(a1)
    diagonal_deviation = np.maximum.reduce(
        [
            np.abs(np.diagonal(a2)),
            np.abs(diagonal.imag),
            np.maximum(-diagonal.real, 0.0),
        ]
    )
    if np.any(diagonal_deviation > tol):
        index = int(np.argmax(diagonal_deviation))
        raise StructureViolation(
            f"diagonal block {index} is not a nonnegative multiple of I_2"
        )

    return StructuredHermitianBlockMatrix(
        np.maximum(diagonal.real, 0.0), np.stack((a1, a2), axis=-1)
    )


def block_matvec(
    matrix: StructuredHermitianBlockMatrix, vector: BlockColumnVector
) -> BlockColumnVector:
    """``A v`` for a block column ``v``, diagonal blocks taken as scalars."""
    m = matrix.m
    diagonal_part = arithmetic.pair_scale(matrix.diag, vector.pairs)
    if m == 1:
        return BlockColumnVector(diagonal_part)

    rows, cols = np.nonzero(~np.eye(m, dtype=bool))
    products = arithmetic.pair_mul(
        matrix.pairs()[rows, cols], vector.pairs[cols]
    )
    off_diagonal = arithmetic.segment_sum(products, rows, m)

    return BlockColumnVector(arithmetic.pair_add(diagonal_part, off_diagonal))


def hermitian_update(
    matrix: StructuredHermitianBlockMatrix,
    left: BlockColumnVector,
    right: BlockColumnVector,
) -> StructuredHermitianBlockMatrix:
    """``A - x y^H`` where ``x y^H`` is Hermitian (``y`` a real multiple of
    ``x``), so only the upper blocks and the diagonal scalars are formed.
    """
    m = matrix.m
    diag = arithmetic.rsub(
        matrix.diag, arithmetic.pair_inner_re(left.pairs, right.pairs)
    )

    upper = np.zeros((m, m, 2), dtype=complex)
    rows, cols = np.triu_indices(m, 1)
    if rows.size:
        products = arithmetic.pair_mul(
            left.pairs[rows], arithmetic.pair_adjoint(right.pairs[cols])
        )
        upper[rows, cols] = arithmetic.pair_sub(
            matrix.upper[rows, cols], products
        )

    return StructuredHermitianBlockMatrix(diag, upper)
