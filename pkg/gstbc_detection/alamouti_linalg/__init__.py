from gstbc_detection.alamouti_linalg.blocks import (
    AlamoutiBlock,
    ab_add,
    ab_adjoint,
    ab_mul,
    ab_scale,
)
from gstbc_detection.alamouti_linalg.flops import (
    FlopCounter,
    charge,
    charge_complex,
    flop_scope,
)
from gstbc_detection.alamouti_linalg.structured import (
    BlockColumnVector,
    StructuredHermitianBlockMatrix,
    block_matvec,
    hermitian_update,
    sbm_from_dense,
    sbm_to_dense,
)
