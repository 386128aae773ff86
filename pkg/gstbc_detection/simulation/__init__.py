from gstbc_detection.simulation.complexity import (
    ComplexityPoint,
    FlopReport,
    complexity_curve,
    dsttd_speedup,
    fit_leading_coefficients,
    run_flop_report,
    sqrd_speedup,
)
from gstbc_detection.simulation.input_file import (
    DetectionInput,
    dump_input,
    generate_input,
    load_input,
    parse_input,
    write_input,
)
from gstbc_detection.simulation.records import BerRecord, emit_csv, parse_csv
from gstbc_detection.simulation.sweep import (
    BerSimulator,
    SimConfig,
    ber_curve,
    db_gap,
    run_ber_sweep,
    snr_at_ber,
    snr_to_sigma,
)
