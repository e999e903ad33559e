"""
Monte Carlo downlink simulator for a simplified urban micro-cell network.

Each iteration drops one UE per site, points every base station's matched
beam at its own UE and evaluates the SINR of the center site's UE against
the other sites' beams. Channels are single geometric rays with street-canyon
path loss, a LOS/NLOS draw per link and optional log-normal shadowing.

Iteration ``i`` draws everything from ``substream(seed, i)`` and samples are
reduced in iteration order, so results do not depend on the worker count.
"""

import logging
import math
import time
from dataclasses import dataclass
from functools import partial
from typing import List, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from ..arrays.beam import ARRAY_FACTOR_FLOOR, element_gain_db, steering_phases
from ..arrays.models import ArrayGeometry, LatticeSpec, ProbabilityProfile
from ..arrays.thinning import generate_mask, mask_to_geometry
from ..models import InputConfig, SinrStats
from ..rng import draw_seed, substream
from ..runtime import ordered_map
from .channel import los_probability, path_loss_db
from .config import NetworkConfig

logger = logging.getLogger(__name__)

DEFAULT_LATTICE_DIMS = (100, 99)
DEFAULT_N_ACTIVE = 64
ITERATIONS_PER_TASK = 64

_HEX_RINGS = {1: 0, 7: 1, 19: 2}


@dataclass(frozen=True, eq=False)
class Scenario:
    """One drop: positions in meters (x, y, height) and BS->tagged-UE link states"""
    bs_positions: np.ndarray
    ue_positions: np.ndarray
    link_los: np.ndarray
    link_shadowing_db: np.ndarray
    tagged: int = 0

    @property
    def n_sites(self) -> int:
        return self.bs_positions.shape[0]

    def without_site(self, site: int) -> "Scenario":
        """Copy of the drop with interfering site ``site`` removed."""
        if site == self.tagged:
            raise ValueError("Cannot remove the tagged UE's serving site")
        if not 0 <= site < self.n_sites:
            raise ValueError(f"Site index {site} out of range for {self.n_sites} sites")
        keep = np.arange(self.n_sites) != site
        return Scenario(
            bs_positions=self.bs_positions[keep],
            ue_positions=self.ue_positions[keep],
            link_los=self.link_los[keep],
            link_shadowing_db=self.link_shadowing_db[keep],
            tagged=self.tagged - int(site < self.tagged),
        )


def site_positions(n_sites: int, isd: float) -> np.ndarray:
    """
    Hexagonal site layout: center site first, then rings by angle.

    Returns:
        (n_sites, 2) array of horizontal coordinates in meters
    """
    if n_sites not in _HEX_RINGS:
        raise ValueError(f"Hexagonal layouts have 1, 7 or 19 sites, got {n_sites}")
    radius = _HEX_RINGS[n_sites]
    sites = []
    for q in range(-radius, radius + 1):
        for r in range(-radius, radius + 1):
            s = -q - r
            ring = max(abs(q), abs(r), abs(s))
            if ring <= radius:
                x = isd * (q + r / 2.0)
                y = isd * (math.sqrt(3) / 2.0 * r)
                angle = math.atan2(y, x) % (2 * math.pi)
                sites.append((ring, round(angle, 9), x, y))
    sites.sort()
    return np.array([(x, y) for _, _, x, y in sites], dtype=float)


def _inside_cell(x: float, y: float, isd: float) -> bool:
    """Point inside the hexagonal Voronoi cell (flat sides toward neighbors)."""
    half = isd / 2.0
    for angle in (0.0, math.pi / 3, 2 * math.pi / 3):
        if abs(x * math.cos(angle) + y * math.sin(angle)) > half:
            return False
    return True


def _drop_ue(cfg: NetworkConfig, rng: np.random.Generator) -> Tuple[float, float]:
    """Uniform point in the front (x > 0) half of the cell, outside min_2d_distance."""
    circumradius = cfg.isd / math.sqrt(3)
    while True:
        u, v = rng.random(2)
        x = u * cfg.isd / 2.0
        y = (2.0 * v - 1.0) * circumradius
        if x > 0 and math.hypot(x, y) >= cfg.min_2d_distance and _inside_cell(x, y, cfg.isd):
            return x, y


def drop_scenario(cfg: NetworkConfig, rng: np.random.Generator) -> Scenario:
    """
    Drop one UE per site and draw the link states toward the tagged UE.

    Draw order: UE positions site by site, one LOS uniform per link, one
    standard normal per link. Both link draws happen regardless of
    ``force_los``/``shadowing_enabled``.
    """
    sites = site_positions(cfg.n_sites, cfg.isd)
    offsets = np.array([_drop_ue(cfg, rng) for _ in range(cfg.n_sites)], dtype=float)
    ues = sites + offsets

    bs_positions = np.column_stack([sites, np.full(cfg.n_sites, cfg.bs_height)])
    ue_positions = np.column_stack([ues, np.full(cfg.n_sites, cfg.ue_height)])

    los_draws = rng.random(cfg.n_sites)
    normal_draws = rng.standard_normal(cfg.n_sites)

    d_2d = np.hypot(*(ues[0] - sites).T)
    if cfg.force_los:
        link_los = np.ones(cfg.n_sites, dtype=bool)
    else:
        link_los = los_draws < los_probability(d_2d)

    if cfg.shadowing_enabled:
        sigma = np.where(link_los, cfg.shadowing_sigma_los, cfg.shadowing_sigma_nlos)
        shadowing = normal_draws * sigma
    else:
        shadowing = np.zeros(cfg.n_sites)

    return Scenario(bs_positions=bs_positions, ue_positions=ue_positions,
                    link_los=link_los, link_shadowing_db=shadowing)


def link_angles(source: np.ndarray, target: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Zenith, azimuth (from +x boresight) and 3-D distance from source to target.

    Args:
        source, target: (..., 3) positions in meters
    """
    delta = np.asarray(target, dtype=float) - np.asarray(source, dtype=float)
    d_3d = np.linalg.norm(delta, axis=-1)
    theta = np.arccos(np.clip(delta[..., 2] / d_3d, -1.0, 1.0))
    phi = np.arctan2(delta[..., 1], delta[..., 0])
    return theta, phi, d_3d


def beam_gains_db(geometry: ArrayGeometry, steer_theta, steer_phi, eval_theta, eval_phi) -> np.ndarray:
    """
    Gain of each station's matched beam evaluated toward another direction.

    Entry k: element gain toward (eval_theta[k], eval_phi[k]) plus the array
    factor of weights matched to (steer_theta[k], steer_phi[k]).
    """
    if len(geometry) == 0:
        raise ValueError("Array geometry has no elements")
    n = len(geometry)
    weights = np.exp(-1j * steering_phases(geometry, steer_theta, steer_phi)) / math.sqrt(n)
    response = np.sum(weights * np.exp(1j * steering_phases(geometry, eval_theta, eval_phi)), axis=-1)
    af = np.maximum(np.abs(response) ** 2, ARRAY_FACTOR_FLOOR)
    return element_gain_db(eval_theta, eval_phi) + 10 * np.log10(af)


def tagged_sinr_db(scenario: Scenario, geometry: ArrayGeometry, cfg: NetworkConfig) -> float:
    """SINR of the tagged UE in dB; all stations share ``geometry``."""
    steer_theta, steer_phi, _ = link_angles(scenario.bs_positions, scenario.ue_positions)
    tagged_ue = scenario.ue_positions[scenario.tagged]
    eval_theta, eval_phi, d_3d = link_angles(scenario.bs_positions, tagged_ue[None, :])

    gains = beam_gains_db(geometry, steer_theta, steer_phi, eval_theta, eval_phi)
    losses = np.atleast_1d(path_loss_db(cfg, d_3d, scenario.link_los)) + scenario.link_shadowing_db
    rx_dbm = cfg.tx_power - losses + gains

    interferers = np.arange(scenario.n_sites) != scenario.tagged
    interference_mw = float(np.sum(10.0 ** (rx_dbm[interferers] / 10.0)))
    noise_mw = 10.0 ** (cfg.noise_dbm / 10.0)
    return float(rx_dbm[scenario.tagged] - 10.0 * math.log10(noise_mw + interference_mw))


def percentile(samples: Sequence[float], p: float) -> float:
    """
    Linear-interpolation quantile at index h = (n - 1) * p / 100 of the sorted samples.

    Raises:
        ValueError: On empty input or p outside [0, 100]
    """
    values = np.asarray(samples, dtype=float).ravel()
    if values.size == 0:
        raise ValueError("Cannot take a percentile of an empty sample")
    if not 0.0 <= p <= 100.0:
        raise ValueError(f"Percentile must lie in [0, 100], got {p}")
    return float(np.percentile(values, p, method='linear'))


def summarize(samples: Sequence[float], keep_samples: bool = False) -> SinrStats:
    values = np.asarray(samples, dtype=float)
    return SinrStats(
        mean_db=float(np.mean(values)),
        p5_db=percentile(values, 5.0),
        n_samples=int(values.size),
        samples=values.copy() if keep_samples else None,
    )


def _chunks(n_iter: int) -> List[range]:
    return [range(start, min(start + ITERATIONS_PER_TASK, n_iter))
            for start in range(0, n_iter, ITERATIONS_PER_TASK)]


def _run_iterations(indices: range, seed: int, cfg: NetworkConfig,
                    geometry: Optional[ArrayGeometry] = None,
                    lattice: Optional[LatticeSpec] = None,
                    profile: Optional[ProbabilityProfile] = None,
                    n_active: int = 0) -> List[float]:
    out = []
    for i in indices:
        rng = substream(seed, i)
        scenario = drop_scenario(cfg, rng)
        if geometry is None:
            mask = generate_mask(lattice, profile, n_active, draw_seed(rng))
            iteration_geometry = mask_to_geometry(lattice, mask)
        else:
            iteration_geometry = geometry
        out.append(tagged_sinr_db(scenario, iteration_geometry, cfg))
    return out


def _collect(task, n_iter: int, workers: int, progress: bool) -> np.ndarray:
    chunks = _chunks(n_iter)
    if progress:
        chunks = tqdm(chunks, desc="Monte Carlo iterations", unit="chunk")
    samples = []
    for chunk_samples in ordered_map(task, chunks, workers):
        samples.extend(chunk_samples)
    return np.array(samples, dtype=float)


def simulate(input_config: InputConfig, cfg: NetworkConfig,
             lattice_dims: Tuple[int, int] = DEFAULT_LATTICE_DIMS,
             n_active: int = DEFAULT_N_ACTIVE, n_iter: int = 1000, seed: int = 0,
             workers: int = 1, keep_samples: bool = False,
             progress: bool = False) -> SinrStats:
    """
    SINR statistics of the antenna family described by ``input_config``.

    A fresh mask is drawn every iteration on a lattice spaced by the input's
    d_y, d_z, so the statistics describe the family rather than one antenna.

    Args:
        input_config: Spacings and decay rates
        cfg: Scenario constants
        lattice_dims: (n_rows, n_cols) of the candidate lattice
        n_active: Active elements per mask
        n_iter: Monte Carlo iterations (>= 1)
        seed: Master seed; iteration i uses substream(seed, i)
        workers: Parallel workers (does not change results)
        keep_samples: Attach the raw per-iteration samples
        progress: Show a progress bar

    Raises:
        ValueError: If n_iter < 1 or mask generation fails
    """
    if n_iter < 1:
        raise ValueError(f"n_iter must be at least 1, got {n_iter}")
    n_rows, n_cols = lattice_dims
    lattice = LatticeSpec(n_rows=n_rows, n_cols=n_cols,
                          d_y=input_config.d_y, d_z=input_config.d_z)
    profile = ProbabilityProfile(alpha_y=input_config.alpha_y, alpha_z=input_config.alpha_z)
    # fail fast on impossible mask requests before fanning out
    generate_mask(lattice, profile, n_active, seed)

    start_time = time.time()
    task = partial(_run_iterations, seed=seed, cfg=cfg, lattice=lattice,
                   profile=profile, n_active=n_active)
    samples = _collect(task, n_iter, workers, progress)
    logger.debug(f"Simulated {n_iter} iterations for {input_config} in {time.time() - start_time:.2f} seconds")
    return summarize(samples, keep_samples)


def simulate_geometry(geometry: ArrayGeometry, cfg: NetworkConfig, n_iter: int = 1000,
                      seed: int = 0, workers: int = 1, keep_samples: bool = False,
                      progress: bool = False) -> SinrStats:
    """
    SINR statistics of one fixed antenna shared by every station.

    Raises:
        ValueError: If n_iter < 1 or the geometry is empty
    """
    if n_iter < 1:
        raise ValueError(f"n_iter must be at least 1, got {n_iter}")
    if len(geometry) == 0:
        raise ValueError("Array geometry has no elements")

    task = partial(_run_iterations, seed=seed, cfg=cfg, geometry=geometry)
    return summarize(_collect(task, n_iter, workers, progress), keep_samples)
