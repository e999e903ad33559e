"""
Constrained design-parameter search over trained emulators.
"""

from .search import OptimizationResult, optimize
from .analysis import compare_families, slice_scan

__all__ = ["OptimizationResult", "optimize", "slice_scan", "compare_families"]
