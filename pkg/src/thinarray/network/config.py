"""
Scenario configuration for the downlink simulator.

Constants default to a 28 GHz urban micro-cell deployment and can be
overridden from a flat key-value file (YAML or JSON syntax).
"""

import hashlib
import json
import logging
import math
import os
from dataclasses import asdict, dataclass, fields
from typing import Any, Dict, Optional

import yaml

logger = logging.getLogger(__name__)

VALID_SITE_COUNTS = (1, 7, 19)


class ConfigError(ValueError):
    """Raised when a configuration file or value is invalid."""


@dataclass(frozen=True)
class NetworkConfig:
    """Scenario constants: GHz, MHz, dBm, dB and meters"""
    carrier_freq: float = 28.0
    bandwidth: float = 400.0
    tx_power: float = 33.0
    ue_noise_figure: float = 9.0
    n_sites: int = 7
    isd: float = 200.0
    bs_height: float = 10.0
    ue_height: float = 1.5
    shadowing_sigma_los: float = 4.0
    shadowing_sigma_nlos: float = 7.82
    min_2d_distance: float = 10.0
    shadowing_enabled: bool = True
    force_los: bool = False

    def __post_init__(self):
        for name in ("carrier_freq", "bandwidth", "ue_noise_figure", "isd", "bs_height",
                     "ue_height", "shadowing_sigma_los", "shadowing_sigma_nlos", "min_2d_distance"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"Configuration key '{name}' must be strictly positive, got {getattr(self, name)}")
        if self.n_sites not in VALID_SITE_COUNTS:
            raise ConfigError(f"Configuration key 'n_sites' must be one of {VALID_SITE_COUNTS}, got {self.n_sites}")
        if self.min_2d_distance >= self.isd / 2:
            raise ConfigError(
                f"Configuration key 'min_2d_distance' ({self.min_2d_distance}) leaves no room "
                f"for UEs in a cell of ISD {self.isd}"
            )

    @property
    def noise_dbm(self) -> float:
        """Thermal noise over the bandwidth plus UE noise figure."""
        return -174.0 + 10 * math.log10(self.bandwidth * 1e6) + self.ue_noise_figure

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def digest(self) -> str:
        """SHA-256 of the canonical JSON rendering of every field."""
        canonical = json.dumps(self.to_dict(), sort_keys=True)
        return hashlib.sha256(canonical.encode('utf-8')).hexdigest()


_FIELD_TYPES = {f.name: f.type for f in fields(NetworkConfig)}


def _coerce(key: str, value: Any) -> Any:
    expected = _FIELD_TYPES[key]
    if expected is bool:
        if not isinstance(value, bool):
            raise ConfigError(f"Configuration key '{key}' must be true or false, got {value!r}")
        return value
    if expected is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"Configuration key '{key}' must be an integer, got {value!r}")
        return value
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"Configuration key '{key}' must be a number, got {value!r}")
    return float(value)


def network_config_from_dict(overrides: Optional[Dict[str, Any]]) -> NetworkConfig:
    """
    Build a NetworkConfig from defaults plus ``overrides``.

    Raises:
        ConfigError: On unknown keys or values of the wrong type/range
    """
    overrides = overrides or {}
    if not isinstance(overrides, dict):
        raise ConfigError("Configuration must be a key-value mapping")
    values = {}
    for key, value in overrides.items():
        if key not in _FIELD_TYPES:
            raise ConfigError(f"Unknown configuration key '{key}'")
        values[key] = _coerce(key, value)
    return NetworkConfig(**values)


def _parse_document(text: str, config_path: str) -> Any:
    """JSON through json (exponent floats, tab indentation), everything else through YAML."""
    if not text.strip():
        return None
    if config_path.lower().endswith('.json'):
        try:
            return json.loads(text)
        except json.JSONDecodeError as e:
            raise ConfigError(f"Configuration file {config_path} is not valid JSON: {e}")
    if text.lstrip().startswith('{'):
        try:
            return json.loads(text)
        except json.JSONDecodeError:
            pass
    try:
        return yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise ConfigError(f"Configuration file {config_path} is not valid YAML: {e}")

def load_network_config(config_path: Optional[str]) -> NetworkConfig:
    """
    Load scenario overrides from a YAML/JSON file.

    Args:
        config_path: Path to the file, or None for all defaults

    Raises:
        FileNotFoundError: If the file does not exist
        ConfigError: If the document is not a mapping, has unknown keys or bad values
    """
    if config_path is None:
        return NetworkConfig()

    if not os.path.exists(config_path):
        raise FileNotFoundError(f"Configuration file not found: {config_path}")

    with open(config_path, 'r', encoding='utf-8') as f:
        text = f.read()

    document = _parse_document(text, config_path)

    cfg = network_config_from_dict(document)
    logger.info(f"Loaded scenario configuration from {config_path}")
    return cfg
