from gstbc_detection.detectors import (
    DetectionResult,
    detect_fixed_order,
    detect_gstbc,
    detect_linear_mmse,
    detect_osic_symbolwise,
    detect_sic_groupwise_symbolwise,
)
from gstbc_detection.exceptions import GstbcDetectionException
