"""Test suite for simulation engine"""
import json
import sys
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

import numpy as np
import pytest

from backend.distillation import reed_muller
from backend.distillation.reed_muller import build_rm_code
from backend.services.configuration_manager import ConfigurationManager
from backend.simulation import simulation_engine
from backend.simulation.simulation_engine import SimulationEngine


def write_circuit(path, ops, n_modes=4):
    path.write_text(json.dumps({"n_modes": n_modes, "ops": ops}))
    return str(path)


class TestSimulationEngine:
    """Test simulation engine functionality"""

    def test_setup_flow_a8(self):
        """Test flow setup"""
        engine = SimulationEngine()
        config = engine.setup_flow_a8(0.0, 0.3, 7)

        assert config.analysis_type == "flow_a8"
        assert config.parameters["steps"] == 7
        assert engine.config == config

    def test_run_without_config(self):
        """Test running without configuration"""
        engine = SimulationEngine()
        result = engine.run()

        assert result.status == "failed"
        assert "No analysis configuration set" in result.error_message

    def test_run_flow_a8(self):
        engine = SimulationEngine()
        engine.setup_flow_a8(0.0, 0.3, 7)
        result = engine.run()

        assert result.status == "completed"
        assert list(result.table.columns) == ["eps", "eps_out", "Z"]
        assert len(result.table) == 7
        assert engine.result is result

    def test_threshold_a8(self):
        engine = SimulationEngine()
        engine.setup_threshold_a8()
        result = engine.run()

        assert result.status == "completed"
        assert result.check_passed
        assert result.summary["delta8"] == pytest.approx(0.384, abs=1e-3)

    def test_threshold_check_failure(self, monkeypatch):
        """A failed cross-check completes but is flagged"""
        monkeypatch.setattr(simulation_engine, "FIXED_POINT_TOLERANCE", -1.0)
        engine = SimulationEngine()
        engine.setup_threshold_a4()
        result = engine.run()

        assert result.status == "completed"
        assert not result.check_passed

    def test_self_check_failure(self, monkeypatch):
        """A structural self-check that raises is reported, not completed"""
        def odd_rows():
            rows = np.array([(np.arange(1, 16) >> i) & 1 for i in range(4)], dtype=np.uint8)
            rows[0] = 1
            return rows

        build_rm_code.cache_clear()
        monkeypatch.setattr(reed_muller, "_bit_rows", odd_rows)
        engine = SimulationEngine()
        engine.setup_flow_a4([0.01], error_correction=False)
        result = engine.run()

        assert result.status == "check_failed"
        assert not result.check_passed
        assert "do not commute" in result.error_message

    def test_flow_a4_uses_config_default(self):
        config = ConfigurationManager(environ={'ANYON_DISTILLATION_ERROR_CORRECTION': 'false'})
        engine = SimulationEngine(config)
        engine.setup_flow_a4([0.01, 0.05])
        result = engine.run()

        assert result.summary["error_correction"] is False
        assert result.check_passed
        assert result.table["p_s"].iloc[0] < 0.01

    def test_mc_a8_seeded(self):
        engine = SimulationEngine()
        engine.setup_mc_a8(0.05, 1, [8, 16], trials=200, seed=3)
        first = engine.run().table
        second = engine.run().table

        assert list(first["n0"]) == [8, 16]
        assert first.equals(second)

    def test_mc_a8_above_threshold(self):
        engine = SimulationEngine()
        engine.setup_mc_a8(0.4, 1, [8], trials=10, seed=0)
        result = engine.run()

        assert result.status == "failed"
        assert "threshold" in result.error_message

    def test_protocol_verification(self):
        engine = SimulationEngine()
        engine.setup_protocol_verification("o2-o1", seed=1)
        result = engine.run()

        assert result.check_passed
        assert list(result.table["protocol"]) == ["O2->O1"]
        assert result.document["protocols"][0]["passed"]

    def test_unknown_protocol(self):
        engine = SimulationEngine()
        engine.setup_protocol_verification("teleport")
        assert engine.run().status == "failed"

    def test_cost(self):
        engine = SimulationEngine()
        engine.setup_cost(1e12, 0.01, 0.05)
        result = engine.run()

        assert result.status == "completed"
        assert result.summary["M_tot"] > 0
        assert "levels" not in result.summary
        assert len(result.table) > 0

    @pytest.mark.parametrize("state,size", [("a8", 240), ("vacuum", 6), ("a4", 12)])
    def test_orbit(self, state, size):
        engine = SimulationEngine()
        engine.setup_orbit(state)
        assert engine.run().summary["orbit_size"] == size

    def test_unknown_orbit_state(self):
        engine = SimulationEngine()
        engine.setup_orbit("a16")
        assert engine.run().status == "failed"

    def test_simulate(self, tmp_path):
        path = write_circuit(tmp_path / "circuit.json",
                             [{"op": "measure_pair", "p": 1, "q": 2},
                              {"op": "braid", "p": 2, "q": 3},
                              {"op": "measure_pair", "p": 2, "q": 3},
                              {"op": "cbraid", "cond": "t2", "p": 1, "q": 2}])
        engine = SimulationEngine()
        engine.setup_simulation(path, seed=5)
        result = engine.run()

        assert result.status == "completed"
        assert list(result.table["observable"]) == ["F(1,2)", "F(2,3)"]
        assert result.table["outcome_bit"].iloc[0] == 0
        assert result.summary["probability"] == pytest.approx(0.5)

    def test_simulate_bad_circuit(self, tmp_path):
        path = write_circuit(tmp_path / "circuit.json", [{"op": "teleport"}])
        engine = SimulationEngine()
        engine.setup_simulation(path)
        result = engine.run()

        assert result.status == "failed"
        assert "teleport" in result.error_message

    def test_result_dict(self):
        engine = SimulationEngine()
        engine.setup_threshold_a4()
        record = engine.run().to_dict()

        assert record["rows"] == []
        assert record["summary"]["delta4"] == pytest.approx(0.141, abs=1e-3)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
