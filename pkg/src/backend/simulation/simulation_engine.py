"""
Simulation Engine - flows, thresholds, Monte Carlo, protocol checks, cost and circuit runs
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

import numpy as np
import pandas as pd

from ..distillation.a4_flow import acceptance_stabilizer_sum, exact_flow_a4, flow_curve_a4, threshold_a4
from ..majorana.braid_circuit import BraidCircuit, run_circuit
from ..majorana.group_enumeration import orbit_size
from ..majorana.stabilizer_tableau import StabilizerTableau
from ..oracle.syndrome_basis import a4_state
from ..protocols.verification import resolve_protocols, verify_protocol
from ..purification.flow_equations import flow_a8, flow_curve, threshold_a8
from ..purification.monte_carlo import monte_carlo
from ..purification.purification_circuits import a8_state_tableau
from ..services.configuration_manager import ConfigurationManager
from ..services.cost_model import cost_model

logger = logging.getLogger(__name__)

ANALYSIS_TYPES = ("flow_a8", "threshold_a8", "mc_a8", "flow_a4", "threshold_a4",
                  "protocols_verify", "cost", "orbit", "simulate")
ORBIT_STATES = ("a4", "a8", "vacuum")
FIXED_POINT_TOLERANCE = 1e-4
P_S_ORACLE_TOLERANCE = 1e-10


@dataclass
class AnalysisConfig:
    """Configuration for one analysis"""
    analysis_type: str
    parameters: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self):
        return {"analysis_type": self.analysis_type, "parameters": dict(self.parameters)}


@dataclass
class AnalysisResult:
    """
    Rows and summary of one analysis.

    status is 'completed', 'failed' or 'check_failed'. check_passed is
    False when a built-in numerical cross-check disagreed; 'check_failed'
    means a structural self-check raised before any result was produced.
    """
    analysis_type: str
    table: Optional[pd.DataFrame]
    summary: Dict[str, Any]
    status: str
    error_message: Optional[str] = None
    check_passed: bool = True
    document: Optional[Dict[str, Any]] = None  # nested form for json output

    def to_dict(self):
        return {
            "analysis_type": self.analysis_type,
            "rows": [] if self.table is None else self.table.to_dict(orient="records"),
            "summary": self.summary,
            "status": self.status,
            "error_message": self.error_message,
            "check_passed": self.check_passed,
        }


class SimulationEngine:
    """Dispatches analyses with settings drawn from the configuration manager"""

    def __init__(self, config_manager: Optional[ConfigurationManager] = None):
        self.config_manager = config_manager or ConfigurationManager(environ={})
        self.config: Optional[AnalysisConfig] = None
        self.result: Optional[AnalysisResult] = None

    def _setup(self, analysis_type: str, **parameters) -> AnalysisConfig:
        self.config = AnalysisConfig(analysis_type, parameters)
        return self.config

    def setup_flow_a8(self, eps_min: float = 0.0, eps_max: float = 0.38, steps: int = 100) -> AnalysisConfig:
        return self._setup("flow_a8", eps_min=eps_min, eps_max=eps_max, steps=steps)

    def setup_threshold_a8(self) -> AnalysisConfig:
        return self._setup("threshold_a8")

    def setup_mc_a8(self, eps0: float, k: int, n0_values: List[int], trials: Optional[int] = None,
                    seed: Optional[int] = None) -> AnalysisConfig:
        return self._setup("mc_a8", eps0=eps0, k=k, n0_values=list(n0_values), trials=trials, seed=seed)

    def setup_flow_a4(self, eps_values: List[float], error_correction: Optional[bool] = None) -> AnalysisConfig:
        return self._setup("flow_a4", eps_values=list(eps_values), error_correction=error_correction)

    def setup_threshold_a4(self) -> AnalysisConfig:
        return self._setup("threshold_a4")

    def setup_protocol_verification(self, protocol: Optional[str] = None,
                                    seed: Optional[int] = None) -> AnalysisConfig:
        return self._setup("protocols_verify", protocol=protocol, seed=seed)

    def setup_cost(self, N: float, eps0_a4: float, eps0_a8: float) -> AnalysisConfig:
        return self._setup("cost", N=N, eps0_a4=eps0_a4, eps0_a8=eps0_a8)

    def setup_orbit(self, state: str) -> AnalysisConfig:
        return self._setup("orbit", state=state)

    def setup_simulation(self, circuit_path: str, seed: Optional[int] = None) -> AnalysisConfig:
        return self._setup("simulate", circuit_path=circuit_path, seed=seed)

    def run(self) -> AnalysisResult:
        """Run the configured analysis; failures are reported, not raised"""
        if self.config is None:
            return AnalysisResult("none", None, {}, "failed", "No analysis configuration set")
        runner: Optional[Callable[[Dict[str, Any]], AnalysisResult]] = getattr(
            self, f"_run_{self.config.analysis_type}", None)
        if runner is None:
            result = AnalysisResult(self.config.analysis_type, None, {}, "failed",
                                    f"Unknown analysis type: {self.config.analysis_type}")
        else:
            try:
                result = runner(self.config.parameters)
            except (ValueError, KeyError) as e:
                logger.error(f"{self.config.analysis_type} failed: {e}")
                result = AnalysisResult(self.config.analysis_type, None, {}, "failed", str(e))
            except RuntimeError as e:
                logger.error(f"{self.config.analysis_type} self-check failed: {e}")
                result = AnalysisResult(self.config.analysis_type, None, {}, "check_failed", str(e),
                                        check_passed=False)
        self.result = result
        return result

    # ------------------------------------------------------------------
    # Settings helpers
    # ------------------------------------------------------------------

    def _seed(self, value: Optional[int]) -> int:
        return int(value) if value is not None else self.config_manager.get('service', 'seed')

    def _a8_threshold(self) -> float:
        cfg = self.config_manager.get_purification_config()
        return threshold_a8((cfg.threshold_low, cfg.threshold_high), cfg.bisection_tolerance)

    def _a4_threshold(self) -> float:
        cfg = self.config_manager.get_distillation_config()
        tolerance = self.config_manager.get('purification', 'bisection_tolerance')
        return threshold_a4((cfg.threshold_low, cfg.threshold_high), tolerance)

    # ------------------------------------------------------------------
    # Analyses
    # ------------------------------------------------------------------

    def _run_flow_a8(self, params: Dict[str, Any]) -> AnalysisResult:
        rows = flow_curve(params["eps_min"], params["eps_max"], params["steps"])
        table = pd.DataFrame(rows, columns=["eps", "eps_out", "Z"])
        return AnalysisResult("flow_a8", table, {"points": len(table)}, "completed")

    def _run_threshold_a8(self, params: Dict[str, Any]) -> AnalysisResult:
        delta = self._a8_threshold()
        residual = abs(flow_a8(delta).eps_out - delta)
        return AnalysisResult("threshold_a8", None, {"delta8": delta, "residual": residual},
                              "completed", check_passed=residual < FIXED_POINT_TOLERANCE)

    def _run_mc_a8(self, params: Dict[str, Any]) -> AnalysisResult:
        cfg = self.config_manager.get_purification_config()
        trials = params["trials"] or cfg.mc_trials
        seed = self._seed(params["seed"])
        threads = self.config_manager.get('service', 'threads')
        threshold = self._a8_threshold()
        results = [monte_carlo(params["eps0"], params["k"], int(n0), trials, seed, threads,
                               cfg.mc_chunk_size, threshold)
                   for n0 in params["n0_values"]]
        table = pd.DataFrame([r.to_dict() for r in results],
                             columns=["n0", "k", "eps0", "trials", "success_prob", "stderr"])
        return AnalysisResult("mc_a8", table, {"seed": seed, "trials": trials}, "completed")

    def _run_flow_a4(self, params: Dict[str, Any]) -> AnalysisResult:
        error_correction = params["error_correction"]
        if error_correction is None:
            error_correction = self.config_manager.get('distillation', 'error_correction')
        rows = flow_curve_a4(params["eps_values"], error_correction)
        table = pd.DataFrame(rows, columns=["eps", "eps_out", "p_s"])
        deviation = max(abs(acceptance_stabilizer_sum(eps) - exact_flow_a4(eps).p_s)
                        for eps in params["eps_values"])
        summary = {"error_correction": bool(error_correction), "p_s_oracle_deviation": deviation}
        return AnalysisResult("flow_a4", table, summary, "completed",
                              check_passed=deviation < P_S_ORACLE_TOLERANCE)

    def _run_threshold_a4(self, params: Dict[str, Any]) -> AnalysisResult:
        delta = self._a4_threshold()
        residual = abs(exact_flow_a4(delta).eps_out - delta)
        return AnalysisResult("threshold_a4", None, {"delta4": delta, "residual": residual},
                              "completed", check_passed=residual < FIXED_POINT_TOLERANCE)

    def _run_protocols_verify(self, params: Dict[str, Any]) -> AnalysisResult:
        seed = self._seed(params["seed"])
        names = resolve_protocols(params["protocol"] or "all")
        checks = [verify_protocol(name, seed) for name in names]
        table = pd.DataFrame([c.to_dict() for c in checks],
                             columns=["protocol", "branches", "min_fidelity", "max_infidelity",
                                      "total_probability", "passed"])
        passed = all(c.passed for c in checks)
        return AnalysisResult("protocols_verify", table, {"protocols": len(checks), "all_passed": passed},
                              "completed", check_passed=passed,
                              document={"protocols": [c.to_report() for c in checks]})

    def _run_cost(self, params: Dict[str, Any]) -> AnalysisResult:
        report = cost_model(params["N"], params["eps0_a4"], params["eps0_a8"],
                            self._a4_threshold(), self._a8_threshold())
        summary = {key: value for key, value in report.to_dict().items() if key != "levels"}
        summary["top_level_fraction"] = report.top_level_fraction
        return AnalysisResult("cost", report.to_frame(), summary, "completed")

    def _run_orbit(self, params: Dict[str, Any]) -> AnalysisResult:
        state = params["state"]
        if state == "a4":
            start = a4_state()
        elif state == "a8":
            start = a8_state_tableau(0)
        elif state == "vacuum":
            start = StabilizerTableau.vacuum(2)
        else:
            raise ValueError(f"Unknown orbit state {state!r}; expected one of {ORBIT_STATES}")
        max_pairs = max(self.config_manager.get('engine', 'max_group_pairs'), start.n_modes // 2)
        size = orbit_size(start, max_pairs, self.config_manager.get('engine', 'max_orbit_states'))
        return AnalysisResult("orbit", None, {"state": state, "orbit_size": size}, "completed")

    def _run_simulate(self, params: Dict[str, Any]) -> AnalysisResult:
        circuit = BraidCircuit.load(params["circuit_path"])
        seed = self._seed(params["seed"])
        debug = self.config_manager.get('system', 'debug_mode')
        state = StabilizerTableau.vacuum(circuit.n_modes // 2)
        run = run_circuit(circuit, state, np.random.default_rng(seed), check_invariants=debug)
        table = pd.DataFrame(
            [{"index": j, "observable": obs, "outcome_bit": bit}
             for j, (obs, bit) in enumerate(zip(run.record.observables, run.record.bits), start=1)],
            columns=["index", "observable", "outcome_bit"])
        summary = {"n_modes": circuit.n_modes, "instructions": len(circuit),
                   "probability": run.probability, "final_state": str(run.state)}
        return AnalysisResult("simulate", table, summary, "completed")
