"""Test suite for the command-line entry point"""
import json
import sys
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

import numpy as np
import pytest

from backend.distillation import reed_muller
from backend.distillation.reed_muller import build_rm_code
from backend.simulation import simulation_engine
from frontend.main import EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE, build_parser, main


class TestCommandLine:
    """Test subcommands, output formats and exit codes"""

    def test_threshold_a8(self, capsys):
        assert main(["threshold-a8"]) == EXIT_OK
        assert float(capsys.readouterr().out) == pytest.approx(0.3843, abs=1e-3)

    def test_threshold_a4(self, capsys):
        assert main(["threshold-a4"]) == EXIT_OK
        assert float(capsys.readouterr().out) == pytest.approx(0.141, abs=1e-3)

    @pytest.mark.parametrize("state,size", [("a8", "240"), ("vacuum", "6")])
    def test_orbit(self, capsys, state, size):
        assert main(["orbit", "--state", state]) == EXIT_OK
        assert capsys.readouterr().out.strip() == size

    def test_flow_a8_file_is_deterministic(self, tmp_path):
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(["flow-a8", "--steps", "5", "--out", str(first)]) == EXIT_OK
        assert main(["--out", str(second), "flow-a8", "--steps", "5"]) == EXIT_OK
        lines = first.read_text().splitlines()
        assert lines[0] == "eps,eps_out,Z"
        assert len(lines) == 6
        assert first.read_text() == second.read_text()

    def test_flow_a4_json(self, capsys):
        assert main(["flow-a4", "--eps", "0.01", "0.05", "--no-ec", "--format", "json"]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["report_type"] == "flow_a4"
        assert len(payload["rows"]) == 2

    def test_mc_a8(self, capsys):
        argv = ["--seed", "4", "mc-a8", "--eps0", "0.05", "--k", "1", "--n0", "8", "16", "--trials", "100"]
        assert main(argv) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "n0,k,eps0,trials,success_prob,stderr"
        assert len(lines) == 3

    def test_protocol_report(self, capsys, tmp_path):
        report = tmp_path / "report.json"
        argv = ["protocols-verify", "--protocol", "o3-o1", "--format", "json", "--report", str(report)]
        assert main(argv) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["summary"]["all_passed"] is True
        assert payload["protocols"][0]["protocol"] == "O3->O1"
        assert json.loads(report.read_text()) == payload

    def test_cost(self, capsys):
        assert main(["cost", "--N", "1e12"]) == EXIT_OK
        assert capsys.readouterr().out.startswith("k,eps_k,n_k")

    def test_simulate(self, capsys, tmp_path):
        path = tmp_path / "circuit.json"
        path.write_text(json.dumps({"n_modes": 4, "ops": [{"op": "measure_pair", "p": 1, "q": 2}]}))
        assert main(["simulate", "--circuit", str(path)]) == EXIT_OK
        assert capsys.readouterr().out.splitlines() == ["index,observable,outcome_bit", "1,F(1,2),0"]

    def test_show_config(self, capsys):
        assert main(["--show-config", "--threads", "3"]) == EXIT_OK
        config = json.loads(capsys.readouterr().out)
        assert config["service"]["threads"] == 3

    def test_check_failure_exit_code(self, monkeypatch):
        monkeypatch.setattr(simulation_engine, "FIXED_POINT_TOLERANCE", -1.0)
        assert main(["threshold-a8"]) == EXIT_CHECK_FAILED

    def test_self_check_exit_code(self, monkeypatch, capsys):
        def odd_rows():
            rows = np.array([(np.arange(1, 16) >> i) & 1 for i in range(4)], dtype=np.uint8)
            rows[0] = 1
            return rows

        build_rm_code.cache_clear()
        monkeypatch.setattr(reed_muller, "_bit_rows", odd_rows)
        assert main(["flow-a4", "--eps", "0.01", "--no-ec"]) == EXIT_CHECK_FAILED
        assert "self-check failed" in capsys.readouterr().err

    @pytest.mark.parametrize("argv", [
        [],
        ["teleport"],
        ["orbit"],
        ["orbit", "--state", "a16"],
        ["flow-a8", "--bogus"],
        ["flow-a4", "--eps", "0.1", "--ec", "--no-ec"],
    ])
    def test_usage_errors(self, argv):
        assert main(argv) == EXIT_USAGE

    def test_missing_config_file(self, tmp_path):
        assert main(["--config", str(tmp_path / "absent.json"), "threshold-a8"]) == EXIT_USAGE

    def test_failed_analysis(self):
        assert main(["cost", "--N", "1e6", "--eps0-a8", "0.5"]) == EXIT_USAGE

    def test_parser_help(self):
        assert "protocols-verify" in build_parser().format_help()


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
