"""
Services

Configuration management and the end-to-end resource cost model.

Services:
- ConfigurationManager: Defaults, JSON file and ANYON_* environment overrides
- cost_model: Elementary-operation cost of the non-topological gates
"""

from .configuration_manager import (
    ConfigurationManager,
    SystemConfig,
    EngineConfig,
    PurificationConfig,
    DistillationConfig,
    ServiceConfig,
)
from .cost_model import CostLevel, CostReport, cost_model, cost_slope, a8_raw_copies, operations_per_raw_a8

__all__ = [
    'ConfigurationManager',
    'SystemConfig',
    'EngineConfig',
    'PurificationConfig',
    'DistillationConfig',
    'ServiceConfig',
    'CostLevel',
    'CostReport',
    'cost_model',
    'cost_slope',
    'a8_raw_copies',
    'operations_per_raw_a8',
]
