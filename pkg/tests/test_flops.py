import numpy as np

from gstbc_detection.alamouti_linalg import FlopCounter, arithmetic, flop_scope
from gstbc_detection.detectors import detect_gstbc


class TestFlopScope:
    """Accounting convention and scoping of the flop counter."""

    def test_complex_multiply(self):
        with flop_scope(FlopCounter()) as counter:
            arithmetic.cmul(np.array([1 + 1j]), np.array([2j]))

        assert counter.as_tuple() == (4, 2)

    def test_complex_add(self):
        with flop_scope(FlopCounter()) as counter:
            arithmetic.cadd(np.array([1 + 1j]), np.array([2j]))

        assert counter.as_tuple() == (0, 2)

    def test_empty_scope(self):
        with flop_scope(FlopCounter()) as counter:
            pass

        assert counter.as_tuple() == (0, 0)
        assert counter.total == 0

    def test_nested_scopes_charge_every_counter(self):
        outer, inner = FlopCounter(), FlopCounter()
        with flop_scope(outer):
            arithmetic.reciprocal(2.0)
            with flop_scope(inner):
                arithmetic.radd(np.ones(3), np.ones(3))
            arithmetic.reciprocal(4.0)

        assert inner.as_tuple() == (0, 3)
        assert outer.as_tuple() == (2, 3)

    def test_no_scope_no_charge(self):
        counter = FlopCounter()
        arithmetic.cmul(np.ones(4), np.ones(4))
        with flop_scope(counter):
            pass

        assert counter == FlopCounter()

    def test_compressed_product_is_cheaper_than_dense(self):
        with flop_scope(FlopCounter()) as counter:
            arithmetic.pair_mul(np.ones((1, 2)), np.ones((1, 2)))

        # A dense 2x2 product needs 8 complex mults.
        assert counter.real_mults == 16

    def test_counts_are_deterministic(self, make_instance):
        first = make_instance(3, 4, sigma_n2=0.1)
        second = make_instance(3, 4, sigma_n2=0.1)

        repeated = detect_gstbc(first.hp, first.x, 0.1).flops
        assert detect_gstbc(first.hp, first.x, 0.1).flops == repeated
        assert detect_gstbc(second.hp, second.x, 0.1).flops == repeated
