import numpy as np
import pytest

from gstbc_detection.exceptions import InvalidDimensions
from gstbc_detection.simulation import (
    complexity_curve,
    dsttd_speedup,
    fit_leading_coefficients,
    run_flop_report,
    sqrd_speedup,
)
from gstbc_detection.simulation.complexity import (
    DSTTD_MEASURED_MULT_CONSTANT,
    measure_flops,
    proposed_dsttd_counts,
    proposed_gstbc_leading,
)


class TestDsttdCounts:
    @pytest.mark.parametrize("n_rx", [2, 4, 8])
    def test_mults_are_linear_in_receivers(self, n_rx):
        flops = measure_flops(2, n_rx)

        assert flops.real_mults == 56 * n_rx + DSTTD_MEASURED_MULT_CONSTANT

    def test_adds_grow_by_56_per_receiver(self):
        adds = {n_rx: measure_flops(2, n_rx).real_adds for n_rx in (2, 4, 8)}

        assert adds[4] - adds[2] == 112
        assert adds[8] - adds[4] == 224

    def test_published_counts(self):
        assert proposed_dsttd_counts(4) == (291, 264)

    def test_report_uses_the_dsttd_formula(self):
        report = run_flop_report(2, 4)

        assert report.formula == "dsttd"
        assert report.measured_mults == 295
        assert abs(report.deviation) < 0.05


class TestGstbcCounts:
    def test_tabulated_point(self):
        report = run_flop_report(3, 3)

        assert report.formula == "tabulated"
        assert report.formula_mults == 570
        assert abs(report.deviation) <= 0.05

    def test_leading_formula_elsewhere(self):
        report = run_flop_report(4, 6)

        assert report.formula == "leading"
        assert report.formula_mults == pytest.approx(
            proposed_gstbc_leading(4, 6)
        )

    def test_fitted_leading_coefficients(self):
        samples = [
            (m, n, measure_flops(m, n).real_mults)
            for m in (2, 3, 4, 5)
            for n in (8, 12, 16, 20)
        ]

        grows_with_n, grows_with_m = fit_leading_coefficients(samples)
        assert grows_with_n == pytest.approx(8, rel=0.01)
        assert grows_with_m == pytest.approx(32 / 3, rel=0.01)

    def test_square_systems_grow_cubically(self):
        sizes = np.arange(2, 9)
        mults = [measure_flops(m, m).real_mults for m in sizes]

        leading = np.polyfit(sizes, mults, 3)[0]
        assert leading == pytest.approx(56 / 3, rel=0.01)

    def test_square_samples_cannot_be_separated(self):
        samples = [(m, m, measure_flops(m, m).real_mults) for m in range(1, 9)]

        with pytest.raises(InvalidDimensions):
            fit_leading_coefficients(samples)

    def test_independent_of_the_data(self):
        assert measure_flops(3, 4, seed=1) == measure_flops(3, 4, seed=2)

    def test_more_layers_than_receivers(self):
        with pytest.raises(InvalidDimensions):
            measure_flops(3, 2)


class TestSpeedups:
    @pytest.mark.parametrize("n_layers", [1, 4, 16])
    def test_sqrd(self, n_layers):
        assert sqrd_speedup(n_layers) == pytest.approx(2.571, abs=0.01)

    @pytest.mark.parametrize(
        "n_rx, expected", [(3, 1.02), (4, 1.54), (8, 4.55)]
    )
    def test_dsttd(self, n_rx, expected):
        assert dsttd_speedup(n_rx) == pytest.approx(expected, rel=0.05)

    def test_one_step_sic_is_cheaper_with_two_receivers(self):
        assert dsttd_speedup(2) < 1
        assert 1 / dsttd_speedup(2) == pytest.approx(1.76, abs=0.01)


class TestComplexityCurve:
    def test_per_slot_values(self):
        points = complexity_curve(4)

        assert [point.n_layers for point in points] == [1, 2, 3, 4]
        for point in points:
            m = point.n_layers
            assert point.proposed_per_slot == pytest.approx(
                proposed_gstbc_leading(m, m)
            )
            assert point.sqrd_per_slot / point.proposed_per_slot == (
                pytest.approx(sqrd_speedup(m))
            )
            assert point.measured_per_slot == (
                measure_flops(m, m).total / 2
            )
