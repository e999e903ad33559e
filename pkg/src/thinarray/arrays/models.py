import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np


@dataclass(frozen=True)
class LatticeSpec:
    """Rectangular lattice of candidate elements; spacings in wavelengths"""
    n_rows: int
    n_cols: int
    d_y: float
    d_z: float

    def __post_init__(self):
        if self.n_rows < 1 or self.n_cols < 1:
            raise ValueError(f"Lattice needs at least one row and column, got {self.n_rows}x{self.n_cols}")
        if not (self.d_y > 0 and self.d_z > 0):
            raise ValueError(f"Lattice spacings must be positive, got d_y={self.d_y}, d_z={self.d_z}")

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.n_rows, self.n_cols)

    @property
    def quadrant_shape(self) -> Tuple[int, int]:
        """Eligible top-left quadrant; odd center lines are excluded."""
        return (self.n_rows // 2, self.n_cols // 2)

    def quadrant_offsets(self) -> Tuple[np.ndarray, np.ndarray]:
        """
        Physical distances from the lattice center of the quadrant cells.

        Returns:
            (delta_y, delta_z) arrays of shape quadrant_shape, in wavelengths
        """
        q_rows, q_cols = self.quadrant_shape
        rows = np.arange(q_rows)
        cols = np.arange(q_cols)
        dz = np.abs(rows - (self.n_rows - 1) / 2.0) * self.d_z
        dy = np.abs(cols - (self.n_cols - 1) / 2.0) * self.d_y
        delta_z, delta_y = np.meshgrid(dz, dy, indexing='ij')
        return delta_y, delta_z


@dataclass(frozen=True)
class ProbabilityProfile:
    """Separable exponential profile f = exp(-alpha_y*dy) * exp(-alpha_z*dz)"""
    alpha_y: float
    alpha_z: float

    def __post_init__(self):
        if not (math.isfinite(self.alpha_y) and math.isfinite(self.alpha_z)):
            raise ValueError(f"Profile decay rates must be finite, got ({self.alpha_y}, {self.alpha_z})")


@dataclass(frozen=True, eq=False)
class ActivationMask:
    """Which lattice elements are powered; row 0 is the top row"""
    grid: np.ndarray

    def __post_init__(self):
        grid = np.array(self.grid, dtype=bool)
        if grid.ndim != 2:
            raise ValueError(f"Activation mask must be 2-D, got shape {grid.shape}")
        grid.setflags(write=False)
        object.__setattr__(self, 'grid', grid)

    @property
    def n_active(self) -> int:
        return int(self.grid.sum())

    @property
    def shape(self) -> Tuple[int, int]:
        return self.grid.shape

    def is_mirror_symmetric(self) -> bool:
        return bool(np.array_equal(self.grid, self.grid[:, ::-1])
                    and np.array_equal(self.grid, self.grid[::-1, :]))

    def __eq__(self, other) -> bool:
        return isinstance(other, ActivationMask) and np.array_equal(self.grid, other.grid)

    def __hash__(self) -> int:
        return hash((self.grid.shape, self.grid.tobytes()))


@dataclass(frozen=True, eq=False)
class ArrayGeometry:
    """Element positions (y, z) in wavelengths, centered on the lattice centroid"""
    positions: np.ndarray

    def __post_init__(self):
        positions = np.array(self.positions, dtype=float).reshape(-1, 2)
        positions.setflags(write=False)
        object.__setattr__(self, 'positions', positions)

    @property
    def elements(self) -> List[Tuple[float, float]]:
        return [(float(y), float(z)) for y, z in self.positions]

    @property
    def y(self) -> np.ndarray:
        return self.positions[:, 0]

    @property
    def z(self) -> np.ndarray:
        return self.positions[:, 1]

    def __len__(self) -> int:
        return self.positions.shape[0]

    def __eq__(self, other) -> bool:
        return isinstance(other, ArrayGeometry) and np.array_equal(self.positions, other.positions)

    def __hash__(self) -> int:
        return hash(self.positions.tobytes())


def wrap_azimuth(phi):
    """Wrap azimuth(s) into (-pi, pi]."""
    wrapped = np.pi - np.mod(np.pi - np.asarray(phi, dtype=float), 2 * np.pi)
    if np.ndim(wrapped) == 0:
        return float(wrapped)
    return wrapped


@dataclass(frozen=True)
class Direction:
    """Zenith theta from +z and azimuth phi from panel boresight, radians"""
    theta: float
    phi: float

    def __post_init__(self):
        if not (0.0 <= self.theta <= math.pi):
            raise ValueError(f"Zenith angle must lie in [0, pi], got {self.theta}")
        object.__setattr__(self, 'phi', wrap_azimuth(self.phi))

    @classmethod
    def from_degrees(cls, theta_deg: float, phi_deg: float) -> "Direction":
        return cls(theta=math.radians(theta_deg), phi=math.radians(phi_deg))


BORESIGHT = Direction(theta=math.pi / 2, phi=0.0)


@dataclass(frozen=True, eq=False)
class BeamformingWeights:
    """Complex per-element excitations with unit total power"""
    weights: np.ndarray

    def __post_init__(self):
        weights = np.array(self.weights, dtype=complex).ravel()
        norm = np.linalg.norm(weights)
        if weights.size == 0 or not np.isclose(norm, 1.0, rtol=1e-9, atol=0.0):
            raise ValueError(f"Beamforming weights must have unit norm, got {norm}")
        weights.setflags(write=False)
        object.__setattr__(self, 'weights', weights)

    def __len__(self) -> int:
        return self.weights.size
