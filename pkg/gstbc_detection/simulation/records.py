import csv
import dataclasses
import io
import typing

from gstbc_detection.configuration import Configuration
from gstbc_detection.exceptions import ParseError


@dataclasses.dataclass(frozen=True)
class BerRecord:
    """Error counts of one detector at one SNR point.

    A frame is one two-slot channel use carrying ``4M`` bits.
    """

    detector: str
    snr_db: float
    bits: int
    bit_errors: int
    frames: int
    frame_errors: int

    @property
    def ber(self) -> float:
        return self.bit_errors / self.bits if self.bits else 0.0

    @property
    def fer(self) -> float:
        return self.frame_errors / self.frames if self.frames else 0.0

    @property
    def standard_error(self) -> float:
        """Binomial standard error of :attr:`ber`."""
        if not self.bits:
            return 0.0

        return (self.ber * (1 - self.ber) / self.bits) ** 0.5


def _format_real(value: float) -> str:
    digits = Configuration.Simulation.CSV_SIGNIFICANT_DIGITS

    return f"{value:.{digits}g}"


def emit_csv(
    records: typing.Iterable[BerRecord],
    seed: int = Configuration.Simulation.DEFAULT_SEED,
) -> str:
    configuration = Configuration.Simulation

    output = io.StringIO()
    output.write(f"# snr: {configuration.SNR_DEFINITION}; seed: {seed}\n")

    writer = csv.writer(output, lineterminator="\n")
    writer.writerow(configuration.CSV_COLUMNS)
    for record in records:
        writer.writerow(
            (
                record.detector,
                _format_real(record.snr_db),
                record.bits,
                record.bit_errors,
                _format_real(record.ber),
                record.frames,
                record.frame_errors,
            )
        )

    return output.getvalue()


def parse_csv(text: str) -> typing.List[BerRecord]:
    """Inverse of :func:`emit_csv`; ``#`` lines are skipped."""
    columns = Configuration.Simulation.CSV_COLUMNS

    lines = [
        (number, line)
        for number, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.startswith("#")
    ]
    if not lines:
        raise ParseError("missing CSV header", line=1)

    header_number, header = lines[0]
    if tuple(header.split(",")) != columns:
        raise ParseError(f"unexpected CSV header {header!r}", header_number)

    records = []
    for number, line in lines[1:]:
        fields = next(csv.reader([line]))
        if len(fields) != len(columns):
            raise ParseError(
                f"expected {len(columns)} fields, got {len(fields)}", number
            )
        row = dict(zip(columns, fields))

        try:
            records.append(
                BerRecord(
                    detector=row["detector"],
                    snr_db=float(row["snr_db"]),
                    bits=int(row["bits"]),
                    bit_errors=int(row["bit_errors"]),
                    frames=int(row["frames"]),
                    frame_errors=int(row["frame_errors"]),
                )
            )
        except ValueError as error:
            raise ParseError(str(error), number) from error

    return records
