from dataclasses import dataclass, field, fields
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

FEATURE_NAMES: Tuple[str, ...] = ("d_y", "d_z", "alpha_y", "alpha_z")


@dataclass(frozen=True)
class InputConfig:
    """The 4-D design point: lattice spacings (wavelengths) and decay rates"""
    d_y: float
    d_z: float
    alpha_y: float
    alpha_z: float

    def as_array(self) -> np.ndarray:
        return np.array([self.d_y, self.d_z, self.alpha_y, self.alpha_z], dtype=float)

    @classmethod
    def from_array(cls, values) -> "InputConfig":
        d_y, d_z, alpha_y, alpha_z = (float(v) for v in values)
        return cls(d_y=d_y, d_z=d_z, alpha_y=alpha_y, alpha_z=alpha_z)

    def replace(self, **changes: float) -> "InputConfig":
        values = {f.name: getattr(self, f.name) for f in fields(self)}
        values.update(changes)
        return InputConfig(**values)


@dataclass(frozen=True)
class SinrStats:
    """Simulator output for one design point, in dB"""
    mean_db: float
    p5_db: float
    n_samples: int
    samples: Optional[np.ndarray] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Bounds:
    """Per-parameter (low, high) search box over InputConfig"""
    d_y: Tuple[float, float] = (0.3, 1.0)
    d_z: Tuple[float, float] = (0.3, 1.0)
    alpha_y: Tuple[float, float] = (-1.0, 10.0)
    alpha_z: Tuple[float, float] = (-1.0, 10.0)

    def __post_init__(self):
        for name, (low, high) in self.items():
            if not (np.isfinite(low) and np.isfinite(high)) or low >= high:
                raise ValueError(f"Degenerate bounds for {name}: ({low}, {high})")

    def items(self) -> Iterator[Tuple[str, Tuple[float, float]]]:
        for name in FEATURE_NAMES:
            yield name, getattr(self, name)

    @property
    def low(self) -> np.ndarray:
        return np.array([getattr(self, n)[0] for n in FEATURE_NAMES], dtype=float)

    @property
    def high(self) -> np.ndarray:
        return np.array([getattr(self, n)[1] for n in FEATURE_NAMES], dtype=float)

    @property
    def span(self) -> np.ndarray:
        return self.high - self.low

    def contains(self, config: InputConfig) -> bool:
        x = config.as_array()
        return bool(np.all(x >= self.low) and np.all(x <= self.high))

    def violations(self, config: InputConfig) -> List[str]:
        """Names of the parameters of ``config`` that fall outside the box."""
        out = []
        for name, (low, high) in self.items():
            value = getattr(config, name)
            if not (low <= value <= high):
                out.append(f"{name}={value} not in [{low}, {high}]")
        return out

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        """Draw ``n`` points uniformly in the box, as an (n, 4) array."""
        return self.low + rng.random((n, len(FEATURE_NAMES))) * self.span

    def to_dict(self) -> Dict[str, List[float]]:
        return {name: [low, high] for name, (low, high) in self.items()}

    @classmethod
    def from_dict(cls, data: Dict[str, List[float]]) -> "Bounds":
        return cls(**{name: (float(data[name][0]), float(data[name][1])) for name in FEATURE_NAMES})


DEFAULT_BOUNDS = Bounds()
