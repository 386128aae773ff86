from gstbc_detection.detectors.baselines import (
    detect_linear_mmse,
    detect_osic_symbolwise,
    detect_sic_groupwise_symbolwise,
)
from gstbc_detection.detectors.recursive import (
    cancel_layer,
    deflate_covariance,
    detect_fixed_order,
    detect_gstbc,
    estimate_layer,
    init_covariance,
    init_gram,
    initialize_workspace,
    matched_filter,
    permute_workspace,
    select_layer,
)
from gstbc_detection.detectors.registry import (
    DETECTORS,
    get_available_detectors,
    get_detector,
)
from gstbc_detection.detectors.workspace import (
    DetectionResult,
    DetectorWorkspace,
)
