"""Instrumented numpy primitives.

Every function computes with numpy and charges the active flop scopes by
the shape of its operands, so any algorithm written in terms of these
primitives is counted without a hand-maintained formula.

Alamouti blocks travel in compressed form: an array whose last axis has
length 2 holds ``(a1, a2)`` for the matrix ``[[a1, -a2*], [a2, a1*]]``.
"""

import numpy as np

from gstbc_detection.alamouti_linalg.flops import charge, charge_complex


def _size(array: np.ndarray) -> int:
    return int(np.size(array))


def cmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    result = np.multiply(a, b, dtype=complex)
    charge_complex(mults=_size(result))

    return result


def cadd(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    result = np.add(a, b, dtype=complex)
    charge_complex(adds=_size(result))

    return result


def csub(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    result = np.subtract(a, b, dtype=complex)
    charge_complex(adds=_size(result))

    return result


def radd(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    result = np.add(a, b, dtype=float)
    charge(real_adds=_size(result))

    return result


def rsub(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    result = np.subtract(a, b, dtype=float)
    charge(real_adds=_size(result))

    return result


def rscale(scale: np.ndarray, values: np.ndarray) -> np.ndarray:
    """Real scale times real or complex values (2 mults per complex)."""
    result = np.multiply(scale, values)
    per_entry = 2 if np.iscomplexobj(result) else 1
    charge(real_mults=per_entry * _size(result))

    return result


def reciprocal(value: float) -> float:
    charge(real_mults=1)

    return 1.0 / value


def cdot(a: np.ndarray, b: np.ndarray) -> complex:
    """``a^H b`` for two vectors of equal length."""
    a = np.ravel(a)
    b = np.ravel(b)
    length = a.size
    charge_complex(mults=length, adds=max(length - 1, 0))

    return complex(np.vdot(a, b))


def cmatvec_h(matrix: np.ndarray, vector: np.ndarray) -> np.ndarray:
    """``A^H x`` with one inner product per column of ``A``."""
    rows, cols = matrix.shape
    charge_complex(mults=rows * cols, adds=cols * max(rows - 1, 0))

    return matrix.conj().T @ vector


def column_inner(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Column-wise ``left[:, k]^H right[:, k]``."""
    rows, cols = left.shape
    charge_complex(mults=rows * cols, adds=cols * max(rows - 1, 0))

    return np.einsum("ik,ik->k", left.conj(), right)


def column_energy(matrix: np.ndarray) -> np.ndarray:
    """Column-wise squared Euclidean norm of a complex matrix."""
    rows, cols = matrix.shape
    charge(
        real_mults=2 * rows * cols, real_adds=cols * max(2 * rows - 1, 0)
    )

    return np.einsum("ik,ik->k", matrix.real, matrix.real) + np.einsum(
        "ik,ik->k", matrix.imag, matrix.imag
    )


def segment_sum(
    values: np.ndarray, segment_ids: np.ndarray, segments: int
) -> np.ndarray:
    """Sum the rows of `values` into `segments` bins.

    Costs one complex addition per entry for every summand beyond the
    first of each non-empty bin.
    """
    values = np.asarray(values, dtype=complex)
    result = np.zeros((segments,) + values.shape[1:], dtype=complex)
    if values.shape[0] == 0:
        return result

    np.add.at(result, segment_ids, values)

    non_empty = np.unique(segment_ids).size
    entries = int(np.prod(values.shape[1:], dtype=int))
    charge_complex(adds=(values.shape[0] - non_empty) * entries)

    return result


def pair_adjoint(pairs: np.ndarray) -> np.ndarray:
    """Conjugate transpose of compressed blocks; free of charge."""
    result = np.empty_like(pairs, dtype=complex)
    result[..., 0] = np.conj(pairs[..., 0])
    result[..., 1] = -pairs[..., 1]

    return result


def pair_mul(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Product of compressed Alamouti blocks, 4 complex mults per block."""
    a1, a2 = left[..., 0], left[..., 1]
    b1, b2 = right[..., 0], right[..., 1]

    result = np.stack(
        (a1 * b1 - np.conj(a2) * b2, a2 * b1 + np.conj(a1) * b2), axis=-1
    )
    blocks = _size(result) // 2
    charge_complex(mults=4 * blocks, adds=2 * blocks)

    return result


def pair_apply(blocks: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    """Compressed Alamouti blocks applied to arbitrary complex 2-vectors."""
    a1, a2 = blocks[..., 0], blocks[..., 1]
    z1, z2 = vectors[..., 0], vectors[..., 1]

    result = np.stack(
        (a1 * z1 - np.conj(a2) * z2, a2 * z1 + np.conj(a1) * z2), axis=-1
    )
    count = _size(result) // 2
    charge_complex(mults=4 * count, adds=2 * count)

    return result


def pair_scale(scale: np.ndarray, pairs: np.ndarray) -> np.ndarray:
    """Real scalar(s) times compressed blocks, 4 real mults per block."""
    scale = np.asarray(scale, dtype=float)
    if scale.ndim:
        scale = scale[..., np.newaxis]

    return rscale(scale, np.asarray(pairs, dtype=complex))


def pair_add(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    return cadd(left, right)


def pair_sub(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    return csub(left, right)


def pair_inner_re(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """``Re(x1 y1* + x2 y2*)`` per block: the scalar of ``x y^H`` when it
    is a real multiple of the identity."""
    blocks = _size(left) // 2
    charge(real_mults=4 * blocks, real_adds=3 * blocks)

    return np.real(
        left[..., 0] * np.conj(right[..., 0])
        + left[..., 1] * np.conj(right[..., 1])
    )
