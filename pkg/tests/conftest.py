import typing

import numpy as np
import pytest

from gstbc_detection.channel_model import (
    ChannelMatrix,
    EquivalentChannel,
    NoiseSpec,
    ReceivedVector,
    SymbolVector,
    build_equivalent,
    complex_normal,
    qpsk_modulate,
    transmit,
)


class Instance(typing.NamedTuple):
    channel: ChannelMatrix
    hp: EquivalentChannel
    bits: np.ndarray
    symbols: SymbolVector
    x: ReceivedVector


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def make_instance(rng):
    """Factory of random ``(H, H', bits, s', x')`` tuples."""

    def factory(n_layers, n_rx, sigma_n2=0.0, gains=None):
        if gains is None:
            gains = complex_normal(rng, (n_rx, 2 * n_layers))
        channel = ChannelMatrix(gains)
        bits = rng.integers(0, 2, size=4 * n_layers)
        symbols = qpsk_modulate(bits)
        noise = NoiseSpec(sigma_n2, seed=int(rng.integers(2**31)))

        return Instance(
            channel,
            build_equivalent(channel),
            bits,
            symbols,
            transmit(channel, symbols, noise),
        )

    return factory


@pytest.fixture
def random_pairs(rng):
    """Factory of random compressed Alamouti blocks of a given shape."""

    def factory(*shape):
        return complex_normal(rng, shape + (2,))

    return factory


class DenseOracles:
    """Dense reference computations."""

    @staticmethod
    def gram(hp, alpha):
        matrix = np.asarray(hp)

        return matrix.conj().T @ matrix + alpha * np.eye(matrix.shape[1])

    @staticmethod
    def relative_error(actual, expected):
        return np.linalg.norm(actual - expected) / np.linalg.norm(expected)

    @staticmethod
    def swap_matrix(size, first, second):
        """Permutation matrix exchanging blocks `first` and `second`."""
        order = np.arange(size)
        order[[first, second]] = order[[second, first]]
        blocks = np.stack((2 * order, 2 * order + 1), axis=1).reshape(-1)

        return np.eye(2 * size)[blocks]


@pytest.fixture
def oracles():
    return DenseOracles
