import dataclasses

import numpy as np

from gstbc_detection.alamouti_linalg import arithmetic


@dataclasses.dataclass(frozen=True)
class AlamoutiBlock:
    """Compressed form ``(a1, a2)`` of ``[[a1, -a2*], [a2, a1*]]``.

    The matrix representation of a quaternion. Products, sums, adjoints
    and inverses of such blocks stay in the same form.
    """

    a1: complex = 0j
    a2: complex = 0j

    def __post_init__(self) -> None:
        object.__setattr__(self, "a1", complex(self.a1))
        object.__setattr__(self, "a2", complex(self.a2))

    @classmethod
    def from_pair(cls, pair: np.ndarray) -> "AlamoutiBlock":
        return cls(complex(pair[0]), complex(pair[1]))

    @classmethod
    def identity(cls, scale: float = 1.0) -> "AlamoutiBlock":
        return cls(complex(scale), 0j)

    def as_pair(self) -> np.ndarray:
        return np.array([self.a1, self.a2], dtype=complex)

    def dense(self) -> np.ndarray:
        return np.array(
            [
                [self.a1, -np.conj(self.a2)],
                [self.a2, np.conj(self.a1)],
            ],
            dtype=complex,
        )

    def determinant(self) -> float:
        return abs(self.a1) ** 2 + abs(self.a2) ** 2


def ab_mul(x: AlamoutiBlock, y: AlamoutiBlock) -> AlamoutiBlock:
    return AlamoutiBlock.from_pair(
        arithmetic.pair_mul(x.as_pair(), y.as_pair())
    )


def ab_adjoint(x: AlamoutiBlock) -> AlamoutiBlock:
    return AlamoutiBlock(np.conj(x.a1), -x.a2)


def ab_add(x: AlamoutiBlock, y: AlamoutiBlock) -> AlamoutiBlock:
    return AlamoutiBlock.from_pair(
        arithmetic.pair_add(x.as_pair(), y.as_pair())
    )


def ab_scale(scale: float, x: AlamoutiBlock) -> AlamoutiBlock:
    """Real scalar times block, charged at 4 real multiplications."""
    return AlamoutiBlock.from_pair(
        arithmetic.pair_scale(scale, x.as_pair())
    )
