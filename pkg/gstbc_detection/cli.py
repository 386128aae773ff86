import typing

import click
import numpy as np
from rich import print  # pylint: disable=redefined-builtin
from rich.console import Console
from rich.table import Table

from gstbc_detection.channel_model import build_equivalent
from gstbc_detection.configuration import Configuration
from gstbc_detection.detectors import (
    DetectionResult,
    get_available_detectors,
    get_detector,
)
from gstbc_detection.exceptions import (
    ConfigInvalid,
    GstbcDetectionException,
    SingularPivot,
)
from gstbc_detection.logger import setup_logging
from gstbc_detection.simulation import (
    BerRecord,
    ComplexityPoint,
    DetectionInput,
    FlopReport,
    SimConfig,
    complexity_curve,
    dsttd_speedup,
    emit_csv,
    generate_input,
    load_input,
    run_ber_sweep,
    run_flop_report,
    sqrd_speedup,
    write_input,
)

NUMERICAL_ERROR_EXIT_CODE = 3
INPUT_ERROR_EXIT_CODE = 2

RATIO_LAYERS = (2, 4, 8, 16, 64)
RATIO_RECEIVERS = (2, 3, 4, 8)


def exit_code_for(error: GstbcDetectionException) -> int:
    if isinstance(error, SingularPivot):
        return NUMERICAL_ERROR_EXIT_CODE

    return INPUT_ERROR_EXIT_CODE


class DetectionGroup(click.Group):
    """Turns library errors into messages and exit codes."""

    def invoke(self, ctx: click.Context) -> typing.Any:
        try:
            return super().invoke(ctx)
        except GstbcDetectionException as error:
            Console(stderr=True).print(f"[bold red]Error:[/] {error}")
            ctx.exit(exit_code_for(error))


@click.group(cls=DetectionGroup)
@click.option("--verbose", is_flag=True, help="Log every detection step")
def cli(verbose: bool) -> None:
    """Simulates fast group-wise MMSE-OSIC detection of G-STBC systems."""
    setup_logging(verbose)


def layers_options(function: typing.Callable) -> typing.Callable:
    function = click.option(
        "--n", "n_rx", type=int, required=True, help="Receive antennas"
    )(function)
    function = click.option(
        "--m", "n_layers", type=int, required=True, help="Alamouti layers"
    )(function)

    return function


def parse_detectors(value: str) -> typing.Tuple[str, ...]:
    names = tuple(name.strip() for name in value.split(",") if name.strip())
    if not names:
        raise ConfigInvalid("no detector selected")

    return names


@cli.command(help="Run a Monte Carlo BER sweep and emit CSV.")
@layers_options
@click.option(
    "--snr-start",
    type=float,
    default=Configuration.Simulation.DEFAULT_SNR_START,
    show_default=True,
    help="First Eb/N0 point in dB",
)
@click.option(
    "--snr-stop",
    type=float,
    default=Configuration.Simulation.DEFAULT_SNR_STOP,
    show_default=True,
    help="Last Eb/N0 point in dB",
)
@click.option(
    "--snr-step",
    type=float,
    default=Configuration.Simulation.DEFAULT_SNR_STEP,
    show_default=True,
    help="Eb/N0 step in dB",
)
@click.option(
    "--trials",
    type=int,
    default=Configuration.Simulation.DEFAULT_TRIALS,
    show_default=True,
    help="Channel uses per SNR point",
)
@click.option(
    "--detectors",
    default=",".join(get_available_detectors()),
    show_default=True,
    help="Comma-separated detector names",
)
@click.option(
    "--seed",
    type=int,
    default=Configuration.Simulation.DEFAULT_SEED,
    show_default=True,
    help="Root of all random streams",
)
@click.option(
    "--workers",
    type=int,
    default=1,
    show_default=True,
    help="Worker processes sharing the trials",
)
@click.option(
    "--out",
    type=click.Path(exists=False, writable=True),
    required=False,
    help="CSV output file; the CSV goes to stdout when omitted",
)
def ber(
    n_layers: int,
    n_rx: int,
    snr_start: float,
    snr_stop: float,
    snr_step: float,
    trials: int,
    detectors: str,
    seed: int,
    workers: int,
    out: typing.Optional[str] = None,
) -> None:
    config = SimConfig.from_range(
        snr_start,
        snr_stop,
        snr_step,
        n_layers=n_layers,
        n_rx=n_rx,
        trials_per_point=trials,
        detectors=parse_detectors(detectors),
        seed=seed,
        workers=workers,
    )
    records = run_ber_sweep(config)
    csv_text = emit_csv(records, seed=seed)

    if out is None:
        click.echo(csv_text, nl=False)
        return

    with open(out, "w", encoding="utf-8") as output:
        output.write(csv_text)

    print(build_ber_table(records))
    print(f"Wrote {len(records)} records to {out}")


def build_ber_table(records: typing.List[BerRecord]) -> Table:
    table = Table()
    table.add_column("Detector")
    table.add_column("Eb/N0 [dB]", justify="right")
    table.add_column("Bit errors", justify="right")
    table.add_column("BER", justify="right")
    table.add_column("FER", justify="right")

    for record in records:
        table.add_row(
            record.detector,
            f"{record.snr_db:g}",
            f"{record.bit_errors}/{record.bits}",
            f"{record.ber:.3e}",
            f"{record.fer:.3e}",
        )

    return table


@cli.command(help="Count the flops of one detection call.")
@layers_options
@click.option(
    "--detector",
    type=click.Choice(list(get_available_detectors()), case_sensitive=False),
    default="proposed",
    show_default=True,
    help="Detector to measure",
)
def flops(n_layers: int, n_rx: int, detector: str) -> None:
    report = run_flop_report(n_layers, n_rx, detector)

    print(build_flop_table(report))


def build_flop_table(report: FlopReport) -> Table:
    table = Table(
        title=f"{report.detector}, M={report.n_layers}, N={report.n_rx}"
    )
    table.add_column("Count")
    table.add_column("Measured", justify="right")
    table.add_column(f"Formula ({report.formula})", justify="right")

    table.add_row(
        "Real mults", str(report.measured_mults), f"{report.formula_mults:g}"
    )
    table.add_row(
        "Real adds", str(report.measured_adds), f"{report.formula_adds:g}"
    )
    table.add_row("Flops per time slot", f"{report.flops_per_slot:g}", "")
    table.add_row("Mult deviation", f"{100 * report.deviation:+.2f}%", "")

    return table


@cli.command(help="Detect the symbols of one instance read from a file.")
@click.option(
    "--input",
    "input_path",
    type=click.Path(exists=True, readable=True),
    required=True,
    help="Instance file",
)
@click.option(
    "--detector",
    type=click.Choice(list(get_available_detectors()), case_sensitive=False),
    default="proposed",
    show_default=True,
    help="Detector to run",
)
@click.option(
    "--alpha",
    type=float,
    required=False,
    help="Regularizer overriding the file's alpha",
)
def detect(
    input_path: str, detector: str, alpha: typing.Optional[float] = None
) -> None:
    detection_input = load_input(input_path)
    if alpha is None:
        alpha = detection_input.alpha

    result = get_detector(detector)(
        build_equivalent(detection_input.channel),
        detection_input.received,
        alpha,
    )

    print_detection(result, detection_input)


def print_detection(
    result: DetectionResult, detection_input: DetectionInput
) -> None:
    print(build_detection_table(result, detection_input))
    print(f"Detection order: {', '.join(map(str, result.order)) or '-'}")
    print(
        f"Flops: {result.flops.real_mults} real mults,"
        f" {result.flops.real_adds} real adds"
    )

    if detection_input.symbols is not None:
        sent = np.asarray(detection_input.symbols)
        errors = int(np.count_nonzero(~np.isclose(result.decisions, sent)))
        print(f"Symbol errors: {errors}")


def format_symbol(value: complex) -> str:
    # Drops the sign of negative zeros.
    value = complex(value) + 0j

    return f"{value.real:+.4f}{value.imag:+.4f}i"


def build_detection_table(
    result: DetectionResult, detection_input: DetectionInput
) -> Table:
    table = Table()
    table.add_column("Symbol", justify="center")
    table.add_column("Soft estimate", justify="right")
    table.add_column("Decision", justify="right")
    if detection_input.symbols is not None:
        table.add_column("Sent", justify="right")

    sent = (
        np.asarray(detection_input.symbols)
        if detection_input.symbols is not None
        else None
    )
    for index, (soft, decision) in enumerate(
        zip(result.soft, result.decisions)
    ):
        row = [
            f"s{index // 2 + 1}{index % 2 + 1}",
            format_symbol(soft),
            format_symbol(decision),
        ]
        if sent is not None:
            row.append(format_symbol(sent[index]))
        table.add_row(*row)

    return table


@cli.command(help="Compare flops per time slot at M = N.")
@click.option(
    "--max-m",
    type=click.IntRange(min=1),
    default=8,
    show_default=True,
    help="Largest number of layers",
)
def complexity(max_m: int) -> None:
    print(build_complexity_table(complexity_curve(max_m)))


def build_complexity_table(points: typing.List[ComplexityPoint]) -> Table:
    table = Table(title="Average flops per time slot, M = N")
    table.add_column("M", justify="right")
    table.add_column("Proposed (measured)", justify="right")
    table.add_column("Proposed (leading terms)", justify="right")
    table.add_column("Sorted QR (leading terms)", justify="right")

    for point in points:
        table.add_row(
            str(point.n_layers),
            f"{point.measured_per_slot:g}",
            f"{point.proposed_per_slot:.1f}",
            f"{point.sqrd_per_slot:.1f}",
        )

    return table


@cli.command(help="Print the formula-level speedups.")
def ratios() -> None:
    print(build_sqrd_ratio_table())
    print(build_dsttd_ratio_table())


def build_sqrd_ratio_table() -> Table:
    table = Table(title="Sorted QR G-STBC vs. proposed, M = N")
    table.add_column("M", justify="right")
    table.add_column("Speedup", justify="right")

    for n_layers in RATIO_LAYERS:
        table.add_row(str(n_layers), f"{sqrd_speedup(n_layers):.3f}")

    return table


def build_dsttd_ratio_table() -> Table:
    table = Table(title="One-step SIC DSTTD vs. proposed DSTTD")
    table.add_column("N", justify="right")
    table.add_column("Flop ratio", justify="right")

    for n_rx in RATIO_RECEIVERS:
        table.add_row(str(n_rx), f"{dsttd_speedup(n_rx):.3f}")

    return table


@cli.command("make-input", help="Write a random instance for `detect`.")
@layers_options
@click.option(
    "--snr",
    type=float,
    default=10.0,
    show_default=True,
    help="Eb/N0 in dB",
)
@click.option(
    "--seed",
    type=int,
    default=Configuration.Simulation.DEFAULT_SEED,
    show_default=True,
    help="Random seed",
)
@click.option(
    "--output",
    type=click.Path(exists=False, writable=True),
    required=True,
    help="Instance file",
)
def make_input(
    n_layers: int, n_rx: int, snr: float, seed: int, output: str
) -> None:
    write_input(generate_input(n_layers, n_rx, snr, seed), output)

    print(f"Successfully wrote an M={n_layers}, N={n_rx} instance to {output}")


def main() -> None:
    cli(prog_name="gstbc_detection")


if __name__ == "__main__":
    main()
