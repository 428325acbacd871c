"""Test suite for the elementary-operation cost model"""
import sys
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

import numpy as np
import pytest

from backend.distillation.a4_flow import a4_schedule
from backend.purification.schedule import schedule
from backend.services.cost_model import (
    CostLevel,
    CostReport,
    a8_raw_copies,
    cost_model,
    cost_slope,
    operations_per_raw_a8,
)

EPS0_A4 = 0.01
EPS0_A8 = 0.05


class TestCostModel:
    """Test the layered cost report"""

    def test_report_fields(self):
        report = cost_model(1e12, EPS0_A4, EPS0_A8)
        assert report.delta == pytest.approx(1e-12)
        assert report.cz_cost > 0
        assert report.M_tot > 0
        assert report.t_gate_cost > report.M_tot
        assert 0.0 < report.top_level_fraction <= 1.0
        record = report.to_dict()
        assert len(record["levels"]) == len(report.levels)
        assert list(report.to_frame().columns)[-1] == "M_k"

    def test_monotone_in_size(self):
        small = cost_model(1e6, EPS0_A4, EPS0_A8)
        large = cost_model(1e30, EPS0_A4, EPS0_A8)
        assert large.M_tot >= small.M_tot
        assert large.cz_cost >= small.cz_cost
        assert len(large.levels) >= len(small.levels)

    def test_levels_use_cubed_target(self):
        report = cost_model(1e20, EPS0_A4, EPS0_A8)
        for level in report.levels:
            assert level.a8_target == pytest.approx(level.eps ** 3)
            assert level.M == pytest.approx(level.m * level.g)

    def test_rounds_from_schedule(self):
        report = cost_model(1e8, EPS0_A4, EPS0_A8)
        plan = a4_schedule(EPS0_A4, 1e-8)
        assert [level.g for level in report.levels] == pytest.approx([level.n / 15 for level in plan.levels[:-1]])
        assert [level.a8_raw for level in report.levels] == pytest.approx(
            [schedule(EPS0_A8, level.eps ** 3).n0 for level in plan.levels[:-1]])

    def test_two_gate_circuit(self):
        report = cost_model(2, EPS0_A4, EPS0_A8)
        assert report.levels == []
        assert report.M_tot == 0.0
        assert report.t_gate_cost > 0

    def test_small_circuit(self):
        with pytest.raises(ValueError):
            cost_model(1, EPS0_A4, EPS0_A8)

    def test_above_threshold(self):
        with pytest.raises(ValueError):
            cost_model(1e6, 0.2, EPS0_A8)
        with pytest.raises(ValueError):
            cost_model(1e6, EPS0_A4, 0.39)

    def test_top_level_fraction(self):
        levels = [CostLevel(0, 0.01, 15.0, 1e-6, 2.0, 1.0, 5.0), CostLevel(1, 1e-5, 1.0, 1e-15, 4.0, 4.0, 1.0)]
        report = CostReport(1e9, EPS0_A4, EPS0_A8, 10.0, 0.0, levels)
        assert report.M_tot == pytest.approx(9.0)
        assert report.top_level_fraction == pytest.approx(4 / 9)


class TestA8Copies:
    """Test the raw |a8> count per purified copy"""

    def test_no_purification_needed(self):
        assert a8_raw_copies(EPS0_A8, 0.1) == 1.0

    def test_grows_with_precision(self):
        assert a8_raw_copies(EPS0_A8, 1e-20) > a8_raw_copies(EPS0_A8, 1e-6) > 1.0

    def test_matches_schedule(self):
        plan = schedule(EPS0_A8, 1e-6)
        acceptance = np.prod([level.acceptance for level in plan.levels])
        assert a8_raw_copies(EPS0_A8, 1e-6) == pytest.approx(plan.n0)
        assert plan.n0 == pytest.approx(8 ** plan.depth / acceptance)

    def test_operations_per_copy(self):
        assert operations_per_raw_a8() > 1.0


class TestScaling:
    """Test the growth of the pi/8 gate cost with log N"""

    def test_slope_over_desk_range(self):
        """Only two |a4> level changes fall in 10^3..10^12, so the step function fits below 3"""
        sizes = np.logspace(3, 12, 40)
        assert cost_slope(sizes, EPS0_A4, EPS0_A8) == pytest.approx(2.49, abs=0.1)

    def test_level_steps(self):
        """M_tot is constant between level changes of the |a4> schedule"""
        assert cost_model(1e3, EPS0_A4, EPS0_A8).M_tot == pytest.approx(cost_model(2e4, EPS0_A4, EPS0_A8).M_tot)
        assert cost_model(1e5, EPS0_A4, EPS0_A8).M_tot > 10 * cost_model(2e4, EPS0_A4, EPS0_A8).M_tot

    def test_slope_needs_two_points(self):
        with pytest.raises(ValueError):
            cost_slope([1e6], EPS0_A4, EPS0_A8)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
