"""
Directional gain of an element geometry under matched beamforming.

Gain toward a direction is the element pattern (dBi) plus the array factor
``10*log10(|sum_i w_i a_i(d)|^2)``, where ``a`` is the steering vector and
``w`` the unit-norm excitation. With ``w = conj(a(target)) / ||a(target)||``
the array factor reaches N toward the target.
"""

import math
from typing import Sequence

import numpy as np
import pandas as pd

from .models import ArrayGeometry, BeamformingWeights, Direction

# 3GPP-style parametric element
THETA_3DB = math.radians(65.0)
PHI_3DB = math.radians(65.0)
SLA_V_DB = 30.0
A_MAX_DB = 30.0
G_MAX_DBI = 8.0

ARRAY_FACTOR_FLOOR = 1e-30


def element_gain_db(theta, phi):
    """
    Element gain in dBi; accepts scalars or broadcastable arrays (radians).

    A_V = -min(12((theta - pi/2)/theta_3dB)^2, SLA), A_H = -min(12(phi/phi_3dB)^2, A_max),
    gain = G_max - min(-(A_V + A_H), A_max).
    """
    theta = np.asarray(theta, dtype=float)
    phi = np.pi - np.mod(np.pi - np.asarray(phi, dtype=float), 2 * np.pi)
    a_v = -np.minimum(12.0 * ((theta - np.pi / 2) / THETA_3DB) ** 2, SLA_V_DB)
    a_h = -np.minimum(12.0 * (phi / PHI_3DB) ** 2, A_MAX_DB)
    gain = G_MAX_DBI - np.minimum(-(a_v + a_h), A_MAX_DB)
    if gain.ndim == 0:
        return float(gain)
    return gain


def direction_gain_db(direction: Direction) -> float:
    return element_gain_db(direction.theta, direction.phi)


def _require_elements(geom: ArrayGeometry) -> None:
    if len(geom) == 0:
        raise ValueError("Array geometry has no elements")


def steering_phases(geom: ArrayGeometry, theta, phi) -> np.ndarray:
    """Phase 2*pi*(y sin(theta) sin(phi) + z cos(theta)); shape (..., N)."""
    theta = np.asarray(theta, dtype=float)[..., None]
    phi = np.asarray(phi, dtype=float)[..., None]
    return 2 * np.pi * (geom.y * np.sin(theta) * np.sin(phi) + geom.z * np.cos(theta))


def steering_vector(geom: ArrayGeometry, direction: Direction) -> np.ndarray:
    """
    Steering vector toward ``direction``; positions are in wavelengths.

    Raises:
        ValueError: If the geometry is empty
    """
    _require_elements(geom)
    return np.exp(1j * steering_phases(geom, direction.theta, direction.phi))


def conjugate_weights(geom: ArrayGeometry, target: Direction) -> BeamformingWeights:
    """Matched weights ``conj(a(target)) / ||a(target)||``."""
    a = steering_vector(geom, target)
    return BeamformingWeights(np.conj(a) / np.linalg.norm(a))


def array_factor(geom: ArrayGeometry, weights: BeamformingWeights, theta, phi):
    """``|sum_i w_i a_i|^2`` for scalar or array directions."""
    _require_elements(geom)
    if len(weights) != len(geom):
        raise ValueError(f"Weight length {len(weights)} does not match {len(geom)} elements")
    response = np.exp(1j * steering_phases(geom, theta, phi)) @ weights.weights
    power = np.abs(response) ** 2
    if power.ndim == 0:
        return float(power)
    return power


def array_gain_db(geom: ArrayGeometry, weights: BeamformingWeights, direction: Direction) -> float:
    """
    Element gain plus array factor in dB, array factor floored at 1e-30.

    Raises:
        ValueError: On weight/element count mismatch or empty geometry
    """
    af = array_factor(geom, weights, direction.theta, direction.phi)
    return direction_gain_db(direction) + 10 * math.log10(max(af, ARRAY_FACTOR_FLOOR))


def array_gain_grid_db(geom: ArrayGeometry, weights: BeamformingWeights, theta, phi) -> np.ndarray:
    """Vectorized ``array_gain_db`` over broadcastable angle arrays."""
    af = np.asarray(array_factor(geom, weights, theta, phi))
    return element_gain_db(theta, phi) + 10 * np.log10(np.maximum(af, ARRAY_FACTOR_FLOOR))


def pattern_grid(geom: ArrayGeometry, weights: BeamformingWeights,
                 thetas_deg: Sequence[float], phis_deg: Sequence[float]) -> pd.DataFrame:
    """Gain over a theta x phi grid as ``theta_deg,phi_deg,gain_db`` rows."""
    theta_deg, phi_deg = np.meshgrid(np.asarray(thetas_deg, dtype=float),
                                     np.asarray(phis_deg, dtype=float), indexing='ij')
    gain = array_gain_grid_db(geom, weights, np.radians(theta_deg), np.radians(phi_deg))
    return pd.DataFrame({
        "theta_deg": theta_deg.ravel(),
        "phi_deg": phi_deg.ravel(),
        "gain_db": np.asarray(gain).ravel(),
    })


def write_pattern(frame: pd.DataFrame, path: str) -> None:
    frame.to_csv(path, index=False)
