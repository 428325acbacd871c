"""Analysis dispatch - flows, thresholds, Monte Carlo, protocol checks, cost, orbits, circuit runs"""

from .simulation_engine import ANALYSIS_TYPES, ORBIT_STATES, AnalysisConfig, AnalysisResult, SimulationEngine

__all__ = ['ANALYSIS_TYPES', 'ORBIT_STATES', 'AnalysisConfig', 'AnalysisResult', 'SimulationEngine']
