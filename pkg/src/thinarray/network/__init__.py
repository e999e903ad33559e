"""
Monte Carlo SINR simulation of a hexagonal micro-cell deployment.
"""

from .config import ConfigError, NetworkConfig, load_network_config
from .simulator import simulate, simulate_geometry
from .dataset import Dataset, DatasetRow, generate_dataset, load_dataset, save_dataset

__all__ = [
    "NetworkConfig", "ConfigError", "load_network_config",
    "simulate", "simulate_geometry",
    "Dataset", "DatasetRow", "generate_dataset", "load_dataset", "save_dataset",
]
