import os


class Configuration:
    class Linalg:
        STRUCTURE_TOLERANCE = 1e-9

    class Detectors:
        PIVOT_TOLERANCE = 1e-12
        REALITY_TOLERANCE = 1e-9

    class Simulation:
        DEFAULT_SEED = 0
        DEFAULT_TRIALS = 1000
        DEFAULT_SNR_START = 0.0
        DEFAULT_SNR_STOP = 20.0
        DEFAULT_SNR_STEP = 2.0
        SYMBOL_ENERGY = 1.0
        CSV_SIGNIFICANT_DIGITS = 10
        CSV_COLUMNS = (
            "detector",
            "snr_db",
            "bits",
            "bit_errors",
            "ber",
            "frames",
            "frame_errors",
        )
        SNR_DEFINITION = (
            "Eb/N0 [dB] with Eb = sigma_s^2/2 (QPSK, uncoded) and"
            " N0 = sigma_n^2 per complex receive dimension"
        )
        FLOP_REPORT_TOLERANCE = 0.05
        TIME_SLOTS_PER_DETECTION = 2

    class Logging:
        LEVEL = os.environ.get("GSTBC_LOG_LEVEL", "WARNING")
        FORMAT = "%(message)s"
        DATE_FORMAT = "[%X]"
