import numpy as np
import pytest

from gstbc_detection.channel_model import (
    qpsk_demodulate,
    qpsk_modulate,
    qpsk_slice,
)
from gstbc_detection.exceptions import OddBitCount

POINT = 1 / np.sqrt(2)


class TestQpskModulate:
    def test_gray_mapping(self):
        symbols = np.asarray(qpsk_modulate([0, 0, 1, 1, 0, 1, 1, 0]))

        np.testing.assert_allclose(
            symbols,
            POINT * np.array([1 + 1j, -1 - 1j, 1 - 1j, -1 + 1j]),
        )

    def test_unit_energy(self, rng):
        symbols = np.asarray(qpsk_modulate(rng.integers(0, 2, 400)))

        np.testing.assert_allclose(np.abs(symbols), 1.0)

    def test_odd_bit_count(self):
        with pytest.raises(OddBitCount):
            qpsk_modulate([0, 1, 1])


class TestQpskSlice:
    def test_quadrants(self):
        assert qpsk_slice(0.9 + 0.1j) == pytest.approx(POINT * (1 + 1j))
        assert qpsk_slice(-0.2 - 3j) == pytest.approx(POINT * (-1 - 1j))

    def test_constellation_point_is_fixed(self):
        for point in POINT * np.array([1 + 1j, -1 + 1j, 1 - 1j, -1 - 1j]):
            assert qpsk_slice(point) == point

    def test_zero_counts_as_positive(self):
        assert qpsk_slice(0j) == pytest.approx(POINT * (1 + 1j))
        assert qpsk_slice(-1 + 0j) == pytest.approx(POINT * (-1 + 1j))

    def test_round_trip(self, rng):
        bits = rng.integers(0, 2, 64)
        symbols = np.asarray(qpsk_modulate(bits))
        sliced = np.array([qpsk_slice(symbol) for symbol in symbols])

        np.testing.assert_array_equal(qpsk_demodulate(sliced), bits)
