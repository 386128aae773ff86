"""Monte Carlo BER sweeps.

Trial ``t`` draws its channel, bits and noise from the streams keyed by
``(seed, t)``; the same draws are reused at every SNR point and by every
detector. Trials are split into contiguous chunks whose integer error
counts are summed, so the result does not depend on the worker count.
"""

import dataclasses
import functools
import logging
import multiprocessing
import typing

import numpy as np

from gstbc_detection.channel_model import (
    BITS_PER_SYMBOL,
    NoiseSpec,
    Stream,
    build_equivalent,
    generate_channel,
    make_rng,
    qpsk_demodulate,
    qpsk_modulate,
    random_bits,
    transmit,
)
from gstbc_detection.configuration import Configuration
from gstbc_detection.detectors import DETECTORS, get_detector
from gstbc_detection.exceptions import ConfigInvalid
from gstbc_detection.simulation.records import BerRecord

logger = logging.getLogger(__name__)

MODULATIONS = ("qpsk",)


def snr_to_sigma(
    snr_db: float,
    symbol_energy: float = Configuration.Simulation.SYMBOL_ENERGY,
) -> float:
    """Noise variance per complex receive sample for an Eb/N0 in dB.

    Uncoded QPSK carries two bits per symbol, so ``Eb = sigma_s^2 / 2``.
    """
    eb = symbol_energy / BITS_PER_SYMBOL

    return eb / 10 ** (snr_db / 10)


def _canonical_snr(value: float) -> float:
    digits = Configuration.Simulation.CSV_SIGNIFICANT_DIGITS

    return float(f"{float(value):.{digits}g}")


@dataclasses.dataclass(frozen=True)
class SimConfig:
    n_layers: int
    n_rx: int
    snr_db_grid: typing.Tuple[float, ...]
    trials_per_point: int = Configuration.Simulation.DEFAULT_TRIALS
    detectors: typing.Tuple[str, ...] = tuple(DETECTORS)
    seed: int = Configuration.Simulation.DEFAULT_SEED
    modulation: str = "qpsk"
    workers: int = 1

    def __post_init__(self) -> None:
        if not self.n_rx >= self.n_layers >= 1:
            raise ConfigInvalid(
                f"N={self.n_rx}, M={self.n_layers} violates N >= M >= 1"
            )
        if self.trials_per_point < 1:
            raise ConfigInvalid("at least one trial per point is needed")
        if not self.snr_db_grid:
            raise ConfigInvalid("the SNR grid is empty")
        if not self.detectors:
            raise ConfigInvalid("no detector selected")
        if self.modulation.lower() not in MODULATIONS:
            raise ConfigInvalid(f"unsupported modulation {self.modulation}")
        if self.workers < 1:
            raise ConfigInvalid("at least one worker is needed")

        for name in self.detectors:
            get_detector(name)

        object.__setattr__(
            self,
            "snr_db_grid",
            tuple(_canonical_snr(value) for value in self.snr_db_grid),
        )
        object.__setattr__(
            self, "detectors", tuple(name.lower() for name in self.detectors)
        )

    @classmethod
    def from_range(
        cls, start: float, stop: float, step: float, **kwargs: typing.Any
    ) -> "SimConfig":
        """Grid ``start, start + step, ...`` up to and including ``stop``."""
        if step <= 0 or stop < start:
            raise ConfigInvalid(
                f"SNR range {start}..{stop} with step {step} is empty"
            )
        count = int(np.floor((stop - start) / step + 1e-9)) + 1

        return cls(snr_db_grid=tuple(start + step * np.arange(count)), **kwargs)

    @property
    def bits_per_frame(self) -> int:
        return 2 * self.n_layers * BITS_PER_SYMBOL


def run_trials(config: SimConfig, trials: range) -> np.ndarray:
    """Error counts for a block of trials.

    Returns an integer array of shape ``(detectors, snr points, 2)``
    holding bit errors and frame errors.
    """
    detectors = [get_detector(name) for name in config.detectors]
    sigmas = [snr_to_sigma(snr) for snr in config.snr_db_grid]
    energy = Configuration.Simulation.SYMBOL_ENERGY

    counts = np.zeros((len(detectors), len(sigmas), 2), dtype=np.int64)
    for trial in trials:
        channel = generate_channel(
            config.n_rx, config.n_layers, config.seed, trial
        )
        hp = build_equivalent(channel)
        bits = random_bits(
            make_rng(config.seed, trial, Stream.BITS), config.bits_per_frame
        )
        symbols = qpsk_modulate(bits)

        for point, sigma_n2 in enumerate(sigmas):
            x = transmit(
                channel, symbols, NoiseSpec(sigma_n2, config.seed, trial)
            )
            for index, detect in enumerate(detectors):
                result = detect(hp, x, sigma_n2 / energy)
                errors = int(
                    np.count_nonzero(qpsk_demodulate(result.decisions) != bits)
                )
                counts[index, point, 0] += errors
                counts[index, point, 1] += errors > 0

    return counts


class BerSimulator:
    config: SimConfig

    def __init__(self, config: SimConfig) -> None:
        self.config = config

    def chunks(self) -> typing.List[range]:
        total = self.config.trials_per_point
        count = min(self.config.workers, total)
        bounds = np.linspace(0, total, count + 1).astype(int)

        return [range(a, b) for a, b in zip(bounds[:-1], bounds[1:])]

    def count_errors(self) -> np.ndarray:
        worker = functools.partial(run_trials, self.config)
        chunks = self.chunks()

        if len(chunks) == 1:
            partials = [worker(chunks[0])]
        else:
            with multiprocessing.Pool(len(chunks)) as pool:
                partials = pool.map(worker, chunks)

        return np.sum(partials, axis=0)

    def run(self) -> typing.List[BerRecord]:
        config = self.config
        logger.info(
            "Sweeping M=%d, N=%d over %d SNR points with %d trials each",
            config.n_layers,
            config.n_rx,
            len(config.snr_db_grid),
            config.trials_per_point,
        )
        counts = self.count_errors()

        records = []
        for point, snr in enumerate(config.snr_db_grid):
            for index, name in enumerate(config.detectors):
                record = BerRecord(
                    detector=name,
                    snr_db=snr,
                    bits=config.trials_per_point * config.bits_per_frame,
                    bit_errors=int(counts[index, point, 0]),
                    frames=config.trials_per_point,
                    frame_errors=int(counts[index, point, 1]),
                )
                logger.info(
                    "%s at %.2f dB: BER %.3e", name, snr, record.ber
                )
                records.append(record)

        return records


def run_ber_sweep(config: SimConfig) -> typing.List[BerRecord]:
    return BerSimulator(config).run()


def ber_curve(
    records: typing.Iterable[BerRecord], detector: str
) -> typing.Tuple[np.ndarray, np.ndarray]:
    selected = sorted(
        (record for record in records if record.detector == detector),
        key=lambda record: record.snr_db,
    )

    return (
        np.array([record.snr_db for record in selected]),
        np.array([record.ber for record in selected]),
    )


def snr_at_ber(
    snr_db: typing.Sequence[float],
    ber: typing.Sequence[float],
    target: float,
) -> typing.Optional[float]:
    """SNR where the curve first crosses ``target``, interpolating
    ``log10(BER)`` linearly between neighbouring points.

    Returns ``None`` when the sweep never reaches the target.
    """
    snr_db = np.asarray(snr_db, dtype=float)
    ber = np.asarray(ber, dtype=float)
    log_target = np.log10(target)

    for k in range(len(snr_db) - 1):
        high, low = ber[k], ber[k + 1]
        if high >= target >= low and high > 0:
            if low <= 0:
                return float(snr_db[k + 1])
            if high == low:
                return float(snr_db[k])
            fraction = (np.log10(high) - log_target) / (
                np.log10(high) - np.log10(low)
            )
            return float(snr_db[k] + fraction * (snr_db[k + 1] - snr_db[k]))

    return None


def db_gap(
    records: typing.Iterable[BerRecord],
    detector: str,
    reference: str,
    target: float,
) -> typing.Optional[float]:
    """Extra SNR ``detector`` needs over ``reference`` at BER ``target``."""
    records = list(records)
    required = snr_at_ber(*ber_curve(records, detector), target)
    baseline = snr_at_ber(*ber_curve(records, reference), target)
    if required is None or baseline is None:
        return None

    return required - baseline
