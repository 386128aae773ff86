"""Plain-text detection inputs.

Layout, whitespace separated::

    N M alpha
    <N rows of 2M channel gains h_nm>
    <2N received samples x', stacked with conjugated second slot>
    [<2M transmitted symbols s'>]

Complex entries are written ``re+imi`` (``1.5-0.25i``); a bare real
number is accepted as well.
"""

import dataclasses
import re
import typing

import numpy as np

from gstbc_detection.channel_model import (
    ChannelMatrix,
    NoiseSpec,
    ReceivedVector,
    Stream,
    SymbolVector,
    generate_channel,
    make_rng,
    qpsk_modulate,
    random_bits,
    transmit,
)
from gstbc_detection.configuration import Configuration
from gstbc_detection.exceptions import GstbcDetectionException, ParseError
from gstbc_detection.simulation.sweep import snr_to_sigma

_TOKEN = re.compile(r"\S+")

Token = typing.Tuple[str, int]


@dataclasses.dataclass(frozen=True, eq=False)
class DetectionInput:
    channel: ChannelMatrix
    received: ReceivedVector
    alpha: float
    symbols: typing.Optional[SymbolVector] = None

    @property
    def n_rx(self) -> int:
        return self.channel.n_rx

    @property
    def n_layers(self) -> int:
        return self.channel.n_layers


def _tokens(line: str) -> typing.List[Token]:
    return [
        (match.group(), match.start() + 1) for match in _TOKEN.finditer(line)
    ]


def _parse_complex(token: str, line: int, column: int) -> complex:
    text = token[:-1] + "j" if token.endswith("i") else token
    try:
        value = complex(text)
    except ValueError as error:
        raise ParseError(
            f"{token!r} is not a complex number", line, column
        ) from error
    if not np.isfinite(value):
        raise ParseError(f"{token!r} is not finite", line, column)

    return value


def _parse_int(token: Token, line: int, name: str) -> int:
    text, column = token
    try:
        value = int(text)
    except ValueError as error:
        raise ParseError(
            f"{name} must be an integer, got {text!r}", line, column
        ) from error
    if value < 1:
        raise ParseError(f"{name} must be positive", line, column)

    return value


def _parse_row(
    tokens: typing.List[Token], line: int, expected: int, what: str
) -> np.ndarray:
    if len(tokens) != expected:
        column = tokens[expected][1] if len(tokens) > expected else 0
        raise ParseError(
            f"{what} needs {expected} entries, found {len(tokens)}",
            line,
            column,
        )

    return np.array(
        [_parse_complex(text, line, column) for text, column in tokens]
    )


def parse_input(text: str) -> DetectionInput:
    lines = [
        (number, _tokens(line))
        for number, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not lines:
        raise ParseError("empty input", line=1)

    number, header = lines[0]
    if len(header) != 3:
        raise ParseError("header must read 'N M alpha'", number)
    n_rx = _parse_int(header[0], number, "N")
    n_layers = _parse_int(header[1], number, "M")
    try:
        alpha = float(header[2][0])
    except ValueError as error:
        raise ParseError(
            f"alpha must be real, got {header[2][0]!r}", number, header[2][1]
        ) from error

    body = lines[1:]
    if len(body) < n_rx + 1:
        last = lines[-1][0]
        raise ParseError(
            f"expected {n_rx} channel rows and a received line, found"
            f" {len(body)} lines",
            last + 1,
        )
    if len(body) > n_rx + 2:
        raise ParseError("unexpected trailing line", body[n_rx + 2][0])

    gains = np.array(
        [
            _parse_row(tokens, line, 2 * n_layers, f"channel row {row}")
            for row, (line, tokens) in enumerate(body[:n_rx], start=1)
        ]
    )
    line, tokens = body[n_rx]
    received = _parse_row(tokens, line, 2 * n_rx, "received line")

    symbols = None
    if len(body) == n_rx + 2:
        line, tokens = body[n_rx + 1]
        symbols = SymbolVector(
            _parse_row(tokens, line, 2 * n_layers, "symbol line")
        )

    try:
        channel = ChannelMatrix(gains)
    except GstbcDetectionException as error:
        raise ParseError(str(error), lines[0][0]) from error

    return DetectionInput(channel, ReceivedVector(received), alpha, symbols)


def load_input(path: str) -> DetectionInput:
    with open(path, "r", encoding="utf-8") as source:
        return parse_input(source.read())


def format_complex(value: complex) -> str:
    return f"{value.real:.17g}{value.imag:+.17g}i"


def _format_row(values: np.ndarray) -> str:
    return " ".join(format_complex(complex(value)) for value in values)


def dump_input(detection_input: DetectionInput) -> str:
    gains = np.asarray(detection_input.channel)

    lines = [
        f"{detection_input.n_rx} {detection_input.n_layers}"
        f" {float(detection_input.alpha)!r}"
    ]
    lines.extend(_format_row(row) for row in gains)
    lines.append(_format_row(np.asarray(detection_input.received)))
    if detection_input.symbols is not None:
        lines.append(_format_row(np.asarray(detection_input.symbols)))

    return "\n".join(lines) + "\n"


def write_input(detection_input: DetectionInput, path: str) -> None:
    with open(path, "w", encoding="utf-8") as output:
        output.write(dump_input(detection_input))


def generate_input(
    n_layers: int,
    n_rx: int,
    snr_db: float,
    seed: int = Configuration.Simulation.DEFAULT_SEED,
) -> DetectionInput:
    """A random instance with ``alpha = sigma_n^2 / sigma_s^2``, embedding
    the transmitted symbols."""
    channel = generate_channel(n_rx, n_layers, seed)
    bits = random_bits(make_rng(seed, 0, Stream.BITS), 4 * n_layers)
    symbols = qpsk_modulate(bits)
    sigma_n2 = snr_to_sigma(snr_db)

    received = transmit(channel, symbols, NoiseSpec(sigma_n2, seed))
    alpha = sigma_n2 / Configuration.Simulation.SYMBOL_ENERGY

    return DetectionInput(channel, received, alpha, symbols)
