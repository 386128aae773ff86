import typing

import numpy as np

from gstbc_detection.channel_model.channel import SymbolVector
from gstbc_detection.exceptions import OddBitCount

BITS_PER_SYMBOL = 2
QPSK_SCALE = 1 / np.sqrt(2)

Slicer = typing.Callable[[complex], complex]


def qpsk_modulate(bits: typing.Sequence[int]) -> SymbolVector:
    """Gray QPSK, ``(b0, b1) -> ((1 - 2 b0) + i (1 - 2 b1)) / sqrt(2)``.

    Bits fill ``s_11, s_12, s_21, ...`` in order.
    """
    bits = np.asarray(bits, dtype=int).reshape(-1)
    if bits.size % BITS_PER_SYMBOL:
        raise OddBitCount(f"{bits.size} bits cannot be QPSK mapped")

    real = 1 - 2 * bits[0::2]
    imag = 1 - 2 * bits[1::2]

    return SymbolVector(QPSK_SCALE * (real + 1j * imag))


def qpsk_slice(estimate: complex) -> complex:
    """Nearest QPSK point; a zero real or imaginary part counts as +."""
    estimate = np.asarray(estimate, dtype=complex)
    real = np.where(estimate.real >= 0, 1.0, -1.0)
    imag = np.where(estimate.imag >= 0, 1.0, -1.0)
    sliced = QPSK_SCALE * (real + 1j * imag)

    return complex(sliced) if sliced.ndim == 0 else sliced


def qpsk_demodulate(symbols: np.ndarray) -> np.ndarray:
    symbols = np.asarray(symbols, dtype=complex).reshape(-1)

    bits = np.empty(BITS_PER_SYMBOL * symbols.size, dtype=int)
    bits[0::2] = symbols.real < 0
    bits[1::2] = symbols.imag < 0

    return bits


def random_bits(rng: np.random.Generator, count: int) -> np.ndarray:
    return rng.integers(0, 2, size=count)
