class GstbcDetectionException(Exception):
    """Generic exception"""


class StructureViolation(GstbcDetectionException):
    """A 2x2 sub-block deviates from the required Alamouti/scalar pattern."""


class InvalidDimensions(GstbcDetectionException):
    """The operand shapes do not agree with each other or with N >= M >= 1."""


class OddBitCount(GstbcDetectionException):
    """QPSK modulation needs an even number of bits."""


class NonPositiveAlpha(GstbcDetectionException):
    """The MMSE regularizer alpha must be strictly positive."""


class SingularPivot(GstbcDetectionException):
    """A Schur-complement pivot lost positive definiteness or reality."""


class ConfigInvalid(GstbcDetectionException):
    """The simulation configuration violates its invariants."""


class UnknownDetector(ConfigInvalid):
    """The requested detector name is not registered."""


class ParseError(GstbcDetectionException):
    """The detection input file could not be parsed."""

    line: int
    column: int

    def __init__(self, message: str, line: int, column: int = 0) -> None:
        self.line = line
        self.column = column

        location = f"line {line}" + (f", column {column}" if column else "")
        super().__init__(f"{location}: {message}")
