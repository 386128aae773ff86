"""Real-flop accounting.

Counts follow a fixed convention: one complex multiplication is 4 real
multiplications and 2 real additions, one complex addition is 2 real
additions, and real operations count one each. Negations and
conjugations are free. A real division or reciprocal is charged as one
real multiplication.
"""

import contextlib
import contextvars
import typing

COMPLEX_MULT_MULTS = 4
COMPLEX_MULT_ADDS = 2
COMPLEX_ADD_ADDS = 2


class FlopCounter:
    real_mults: int
    real_adds: int

    def __init__(self, real_mults: int = 0, real_adds: int = 0) -> None:
        self.real_mults = real_mults
        self.real_adds = real_adds

    @property
    def total(self) -> int:
        return self.real_mults + self.real_adds

    def charge(self, real_mults: int = 0, real_adds: int = 0) -> None:
        self.real_mults += int(real_mults)
        self.real_adds += int(real_adds)

    def snapshot(self) -> "FlopCounter":
        return FlopCounter(self.real_mults, self.real_adds)

    def as_tuple(self) -> typing.Tuple[int, int]:
        return (self.real_mults, self.real_adds)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FlopCounter):
            return NotImplemented

        return self.as_tuple() == other.as_tuple()

    def __repr__(self) -> str:
        return (
            f"FlopCounter(real_mults={self.real_mults},"
            f" real_adds={self.real_adds})"
        )


# Each thread (and each asyncio task) sees its own stack of open scopes.
_ACTIVE_COUNTERS: contextvars.ContextVar[typing.Tuple[FlopCounter, ...]] = (
    contextvars.ContextVar("active_flop_counters", default=())
)


@contextlib.contextmanager
def flop_scope(counter: FlopCounter) -> typing.Iterator[FlopCounter]:
    """Charge every instrumented operation executed inside to `counter`.

    Scopes nest: an operation is charged to all the counters of the
    enclosing scopes, so a caller measuring a detector still sees the
    detector's own inner accounting.
    """
    token = _ACTIVE_COUNTERS.set(_ACTIVE_COUNTERS.get() + (counter,))
    try:
        yield counter
    finally:
        _ACTIVE_COUNTERS.reset(token)


def charge(real_mults: int = 0, real_adds: int = 0) -> None:
    for counter in _ACTIVE_COUNTERS.get():
        counter.charge(real_mults, real_adds)


def charge_complex(mults: int = 0, adds: int = 0) -> None:
    charge(
        COMPLEX_MULT_MULTS * mults,
        COMPLEX_MULT_ADDS * mults + COMPLEX_ADD_ADDS * adds,
    )
