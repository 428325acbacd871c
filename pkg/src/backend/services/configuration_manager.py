"""
Configuration Manager Service

Handles configuration loading, defaults and runtime overrides for the
simulator. Values come from dataclass defaults, then an optional JSON file,
then ANYON_<SECTION>_<KEY> environment variables; command-line flags are
applied last through set_config.
"""

import json
import logging
import os
from dataclasses import asdict, dataclass, fields
from typing import Any, Dict, Mapping, Optional

logger = logging.getLogger(__name__)

ENV_PREFIX = 'ANYON_'


@dataclass
class SystemConfig:
    """Overall system configuration"""
    debug_mode: bool = False  # validate tableaux after every instruction
    log_level: str = 'INFO'  # DEBUG, INFO, WARNING, ERROR


@dataclass
class EngineConfig:
    """Enumeration bounds for group and orbit closures"""
    max_group_pairs: int = 3
    max_orbit_states: int = 100000


@dataclass
class PurificationConfig:
    """|a8> purification numerics"""
    threshold_low: float = 0.05
    threshold_high: float = 0.45
    bisection_tolerance: float = 1e-6
    mc_trials: int = 10000
    mc_chunk_size: int = 250


@dataclass
class DistillationConfig:
    """|a4> distillation numerics"""
    error_correction: bool = True
    threshold_low: float = 0.05
    threshold_high: float = 0.2


@dataclass
class ServiceConfig:
    """Run-level settings shared by every command"""
    threads: int = 1
    seed: int = 0
    output_format: str = 'csv'  # csv, json


SECTIONS = {
    'system': SystemConfig,
    'engine': EngineConfig,
    'purification': PurificationConfig,
    'distillation': DistillationConfig,
    'service': ServiceConfig,
}


def _coerce(value: Any, default: Any) -> Any:
    """Convert a raw (string) value to the type of the dataclass default"""
    if isinstance(default, bool):
        if isinstance(value, bool):
            return value
        text = str(value).strip().lower()
        if text in ('1', 'true', 'yes', 'on'):
            return True
        if text in ('0', 'false', 'no', 'off'):
            return False
        raise ValueError(f"Cannot interpret {value!r} as a boolean")
    if isinstance(default, int):
        return int(value)
    if isinstance(default, float):
        return float(value)
    return str(value)


class ConfigurationManager:
    """
    Manages all system configuration with support for:
    - JSON configuration files
    - Environment overrides (ANYON_<SECTION>_<KEY>)
    - Runtime configuration updates
    """

    def __init__(self, config_file: Optional[str] = None,
                 environ: Optional[Mapping[str, str]] = None):
        self.config_file = config_file
        self.system_config = SystemConfig()
        self.engine_config = EngineConfig()
        self.purification_config = PurificationConfig()
        self.distillation_config = DistillationConfig()
        self.service_config = ServiceConfig()

        self._load_configuration()
        self._apply_environment(os.environ if environ is None else environ)

    def _section(self, name: str):
        if name not in SECTIONS:
            raise KeyError(f"Unknown config section: {name}")
        return getattr(self, f"{name}_config")

    def _load_configuration(self) -> None:
        """Load configuration from file"""
        if not self.config_file:
            return
        if not os.path.exists(self.config_file):
            raise ValueError(f"Config file not found: {self.config_file}")
        with open(self.config_file, 'r') as f:
            try:
                config_data = json.load(f)
            except json.JSONDecodeError as e:
                raise ValueError(f"Could not parse config file {self.config_file}: {e}") from e
        self._apply_configuration(config_data)

    def _apply_configuration(self, config_data: Dict[str, Any]) -> None:
        """Apply configuration data from file"""
        for section, values in config_data.items():
            for key, value in values.items():
                self.set_config(section, key, value)

    def _apply_environment(self, environ: Mapping[str, str]) -> None:
        for name in SECTIONS:
            for f in fields(SECTIONS[name]):
                variable = f"{ENV_PREFIX}{name.upper()}_{f.name.upper()}"
                if variable in environ:
                    self.set_config(name, f.name, environ[variable])
                    logger.debug(f"Config {name}.{f.name} set from {variable}")

    def get_system_config(self) -> SystemConfig:
        return self.system_config

    def get_engine_config(self) -> EngineConfig:
        return self.engine_config

    def get_purification_config(self) -> PurificationConfig:
        return self.purification_config

    def get_distillation_config(self) -> DistillationConfig:
        return self.distillation_config

    def get_service_config(self) -> ServiceConfig:
        return self.service_config

    def get(self, section: str, key: str) -> Any:
        config = self._section(section)
        if not hasattr(config, key):
            raise KeyError(f"Unknown {section} config key: {key}")
        return getattr(config, key)

    def set_config(self, section: str, key: str, value: Any) -> None:
        """Update one value at runtime, converting it to the field's type"""
        config = self._section(section)
        if not hasattr(config, key):
            raise KeyError(f"Unknown {section} config key: {key}")
        setattr(config, key, _coerce(value, getattr(config, key)))

    def set_system_config(self, key: str, value: Any) -> None:
        self.set_config('system', key, value)

    def set_service_config(self, key: str, value: Any) -> None:
        self.set_config('service', key, value)

    def get_all_config(self) -> Dict[str, Any]:
        """Get all configuration as dictionary"""
        return {name: asdict(self._section(name)) for name in SECTIONS}

    def save_configuration(self, filepath: Optional[str] = None) -> bool:
        """Save current configuration to file"""
        filepath = filepath or self.config_file
        if not filepath:
            raise ValueError("No configuration file path given")
        try:
            directory = os.path.dirname(filepath)
            if directory:
                os.makedirs(directory, exist_ok=True)
            with open(filepath, 'w') as f:
                json.dump(self.get_all_config(), f, indent=2)
            return True
        except OSError as e:
            logger.error(f"Error saving configuration: {e}")
            return False
