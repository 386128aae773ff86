import typing

from gstbc_detection.detectors.baselines import (
    detect_linear_mmse,
    detect_osic_symbolwise,
    detect_sic_groupwise_symbolwise,
)
from gstbc_detection.detectors.recursive import (
    detect_fixed_order,
    detect_gstbc,
)
from gstbc_detection.detectors.workspace import DetectionResult
from gstbc_detection.exceptions import UnknownDetector

Detector = typing.Callable[..., DetectionResult]

DETECTORS: typing.Dict[str, Detector] = {
    "proposed": detect_gstbc,
    "fixed_order": detect_fixed_order,
    "linear_mmse": detect_linear_mmse,
    "osic_symbolwise": detect_osic_symbolwise,
    "sic_groupwise": detect_sic_groupwise_symbolwise,
}


def get_available_detectors() -> typing.Generator[str, None, None]:
    yield from DETECTORS


def get_detector(name: str) -> Detector:
    try:
        return DETECTORS[name.lower()]
    except KeyError as error:
        raise UnknownDetector(
            f"unknown detector {name!r}, expected one of"
            f" {', '.join(get_available_detectors())}"
        ) from error
