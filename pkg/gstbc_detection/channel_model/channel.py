"""Rayleigh flat-fading G-STBC link.

``M`` Alamouti encoders feed ``2M`` transmit antennas; ``N`` receive
antennas observe two time slots. Stacking the first-slot samples with
the conjugated second-slot samples turns the link into the linear model
``x' = H' s' + n'`` with the equivalent channel ``H'``.
"""

import dataclasses

import numpy as np

from gstbc_detection.channel_model.random_streams import (
    Stream,
    complex_normal,
    make_rng,
)
from gstbc_detection.exceptions import InvalidDimensions


def _complex_array(values: np.ndarray, ndim: int) -> np.ndarray:
    array = np.array(values, dtype=complex)
    if array.ndim != ndim:
        raise InvalidDimensions(
            f"expected a {ndim}-dimensional array, got shape {array.shape}"
        )
    if not np.all(np.isfinite(array)):
        raise InvalidDimensions("entries must be finite")
    array.setflags(write=False)

    return array


class _ArrayBacked:
    def __array__(self, dtype: object = None, copy: object = None) -> np.ndarray:
        values = self._values()

        return values if dtype is None else values.astype(dtype)

    def _values(self) -> np.ndarray:
        raise NotImplementedError()


@dataclasses.dataclass(frozen=True, eq=False)
class ChannelMatrix(_ArrayBacked):
    """``N x 2M`` fading gains; column ``2m + k`` is antenna ``k`` of
    layer ``m``."""

    gains: np.ndarray

    def __post_init__(self) -> None:
        gains = _complex_array(self.gains, 2)
        n_rx, columns = gains.shape
        if columns % 2 or not n_rx >= columns // 2 >= 1:
            raise InvalidDimensions(
                f"channel of shape {gains.shape} violates N >= M >= 1"
            )
        object.__setattr__(self, "gains", gains)

    @property
    def n_rx(self) -> int:
        return self.gains.shape[0]

    @property
    def n_layers(self) -> int:
        return self.gains.shape[1] // 2

    def _values(self) -> np.ndarray:
        return self.gains


@dataclasses.dataclass(frozen=True, eq=False)
class EquivalentChannel(_ArrayBacked):
    """``2N x 2M`` matrix ``H'`` whose 2x2 sub-blocks read
    ``[[a, b], [b*, -a*]]``."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        matrix = _complex_array(self.matrix, 2)
        if matrix.shape[0] % 2 or matrix.shape[1] % 2:
            raise InvalidDimensions(
                f"equivalent channel of shape {matrix.shape} is not 2N x 2M"
            )
        object.__setattr__(self, "matrix", matrix)

    @property
    def n_rx(self) -> int:
        return self.matrix.shape[0] // 2

    @property
    def n_layers(self) -> int:
        return self.matrix.shape[1] // 2

    def layer_columns(self, layer: int) -> np.ndarray:
        """The block column ``[h'_{2m-1}, h'_{2m}]`` of one layer."""
        return self.matrix[:, 2 * layer : 2 * layer + 2]

    def structure_deviation(self) -> float:
        """Largest departure from the ``[[a, b], [b*, -a*]]`` pattern."""
        top, bottom = self.matrix[0::2], self.matrix[1::2]

        return float(
            max(
                np.max(np.abs(bottom[:, 0::2] - np.conj(top[:, 1::2]))),
                np.max(np.abs(bottom[:, 1::2] + np.conj(top[:, 0::2]))),
            )
        )

    def _values(self) -> np.ndarray:
        return self.matrix


@dataclasses.dataclass(frozen=True, eq=False)
class SymbolVector(_ArrayBacked):
    """``s' = [s_11, s_12, ..., s_M1, s_M2]``."""

    entries: np.ndarray
    symbol_energy: float = 1.0

    def __post_init__(self) -> None:
        entries = _complex_array(self.entries, 1)
        if entries.size % 2:
            raise InvalidDimensions(
                f"{entries.size} symbols do not fill whole layers"
            )
        object.__setattr__(self, "entries", entries)

    @property
    def n_layers(self) -> int:
        return self.entries.size // 2

    def _values(self) -> np.ndarray:
        return self.entries


@dataclasses.dataclass(frozen=True, eq=False)
class ReceivedVector(_ArrayBacked):
    """``x' = [x_11, x_12*, x_21, x_22*, ...]``."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        entries = _complex_array(self.entries, 1)
        if entries.size % 2:
            raise InvalidDimensions(
                f"{entries.size} samples do not cover two time slots"
            )
        object.__setattr__(self, "entries", entries)

    @property
    def n_rx(self) -> int:
        return self.entries.size // 2

    def _values(self) -> np.ndarray:
        return self.entries


@dataclasses.dataclass(frozen=True)
class NoiseSpec:
    sigma_n2: float
    seed: int = 0
    trial: int = 0

    def __post_init__(self) -> None:
        if not self.sigma_n2 >= 0:
            raise InvalidDimensions(
                f"noise variance {self.sigma_n2} must be nonnegative"
            )


def generate_channel(
    n_rx: int, n_layers: int, seed: int, trial: int = 0
) -> ChannelMatrix:
    if n_layers < 1 or n_rx < n_layers:
        raise InvalidDimensions(
            f"N={n_rx}, M={n_layers} violates N >= M >= 1"
        )

    rng = make_rng(seed, trial, Stream.CHANNEL)

    return ChannelMatrix(complex_normal(rng, (n_rx, 2 * n_layers)))


def build_equivalent(channel: ChannelMatrix) -> EquivalentChannel:
    gains = np.asarray(channel, dtype=complex)
    n_rx, columns = gains.shape

    matrix = np.zeros((2 * n_rx, columns), dtype=complex)
    matrix[0::2] = gains
    matrix[1::2, 0::2] = np.conj(gains[:, 1::2])
    matrix[1::2, 1::2] = -np.conj(gains[:, 0::2])

    return EquivalentChannel(matrix)


def alamouti_codeword(symbols: SymbolVector) -> np.ndarray:
    """The ``2 x 2M`` matrix sent over two slots by the ``M`` encoders."""
    s = np.asarray(symbols, dtype=complex)

    codeword = np.empty((2, s.size), dtype=complex)
    codeword[0] = s
    codeword[1, 0::2] = -np.conj(s[1::2])
    codeword[1, 1::2] = np.conj(s[0::2])

    return codeword


def stack_slots(samples: np.ndarray) -> ReceivedVector:
    """``N x 2`` received block to ``x'``, conjugating the second slot."""
    stacked = np.empty(2 * samples.shape[0], dtype=complex)
    stacked[0::2] = samples[:, 0]
    stacked[1::2] = np.conj(samples[:, 1])

    return ReceivedVector(stacked)


def transmit(
    channel: ChannelMatrix, symbols: SymbolVector, noise: NoiseSpec
) -> ReceivedVector:
    gains = np.asarray(channel, dtype=complex)
    s = np.asarray(symbols, dtype=complex)
    if s.size != gains.shape[1]:
        raise InvalidDimensions(
            f"{s.size} symbols for a channel with {gains.shape[1]} antennas"
        )

    samples = gains @ alamouti_codeword(symbols).T
    if noise.sigma_n2 > 0:
        rng = make_rng(noise.seed, noise.trial, Stream.NOISE)
        samples = samples + complex_normal(
            rng, samples.shape, noise.sigma_n2
        )

    return stack_slots(samples)
