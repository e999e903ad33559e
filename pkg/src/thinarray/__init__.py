"""
thinarray: network-level optimization of thinned antenna arrays.

The package simulates downlink SINR statistics of randomly thinned mmWave
arrays in a hexagonal micro-cell deployment, trains fast regression emulators
of that simulator, and runs constrained global optimization of the array
design parameters over the emulators.
"""

__version__ = "0.1.0"

from .models import DEFAULT_BOUNDS, FEATURE_NAMES, Bounds, InputConfig, SinrStats

__all__ = ["__version__", "InputConfig", "SinrStats", "Bounds", "DEFAULT_BOUNDS", "FEATURE_NAMES"]
