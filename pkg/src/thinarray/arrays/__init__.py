"""
Thinned array generation and beam modelling.

Masks are drawn on a rectangular lattice with a quadrant-mirrored,
exponentially decaying activation profile; beam.py evaluates element and
array gains of the resulting geometries.
"""

from .models import ActivationMask, ArrayGeometry, BeamformingWeights, Direction, LatticeSpec, ProbabilityProfile
from .thinning import activation_probability_map, generate_mask, mask_to_geometry, upa_geometry
from .beam import array_gain_db, conjugate_weights, element_gain_db, steering_vector

__all__ = [
    "LatticeSpec", "ProbabilityProfile", "ActivationMask", "ArrayGeometry", "Direction", "BeamformingWeights",
    "generate_mask", "mask_to_geometry", "upa_geometry", "activation_probability_map",
    "element_gain_db", "steering_vector", "conjugate_weights", "array_gain_db",
]
