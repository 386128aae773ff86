import dataclasses
import typing

import numpy as np

from gstbc_detection.alamouti_linalg import (
    FlopCounter,
    StructuredHermitianBlockMatrix,
)
from gstbc_detection.exceptions import InvalidDimensions


@dataclasses.dataclass(frozen=True, eq=False)
class DetectorWorkspace:
    """State of the recursion phase at depth ``m``.

    ``rbar`` and ``qbar`` are the permuted ``R_|m`` and ``Q_|m = R_|m^-1``,
    ``z`` the matched-filter vector of the ``m`` undetected layers, and
    ``p`` the layer permutation: ``p[m - 1]`` is the layer estimated at
    depth ``m``.
    """

    m: int
    rbar: StructuredHermitianBlockMatrix
    qbar: StructuredHermitianBlockMatrix
    z: np.ndarray
    p: typing.Tuple[int, ...]
    alpha: float

    def __post_init__(self) -> None:
        z = np.array(self.z, dtype=complex).reshape(-1)
        if not self.rbar.m == self.qbar.m == self.m or z.size != 2 * self.m:
            raise InvalidDimensions(
                f"workspace at depth {self.m} holds R of {self.rbar.m}"
                f" blocks, Q of {self.qbar.m} blocks and {z.size} samples"
            )
        z.setflags(write=False)
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "p", tuple(int(i) for i in self.p))

    @property
    def z_blocks(self) -> np.ndarray:
        return self.z.reshape(-1, 2)

    @property
    def remaining_layers(self) -> typing.Tuple[int, ...]:
        return self.p[: self.m]


@dataclasses.dataclass(frozen=True, eq=False)
class DetectionResult:
    """Outcome of one detection call.

    ``decisions`` and ``soft`` follow the original ``s'`` ordering.
    ``order`` lists what was detected, first detection first: layer
    indices for group-wise detectors, symbol indices for symbol-wise
    ones, empty for the linear detector.
    """

    decisions: np.ndarray
    soft: np.ndarray
    order: typing.Tuple[int, ...]
    flops: FlopCounter

    @property
    def n_layers(self) -> int:
        return self.decisions.size // 2
