import enum

import numpy as np


class Stream(enum.IntEnum):
    CHANNEL = 0
    BITS = 1
    NOISE = 2


def make_rng(
    seed: int, trial: int = 0, stream: Stream = Stream.CHANNEL
) -> np.random.Generator:
    """Counter-based Philox stream keyed by ``(seed, trial, stream)``.

    Trials draw from independent streams, so a trial's channel, data and
    noise do not depend on which other trials ran or in what order.
    """
    sequence = np.random.SeedSequence([int(seed), int(trial), int(stream)])

    return np.random.Generator(np.random.Philox(sequence))


def complex_normal(
    rng: np.random.Generator, shape: tuple, variance: float = 1.0
) -> np.ndarray:
    """Circularly-symmetric complex Gaussian samples."""
    scale = np.sqrt(variance / 2)

    return scale * (
        rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    )
