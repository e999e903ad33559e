"""
Urban micro-cell street-canyon propagation: LOS probability and path loss.
"""

import numpy as np

from .config import NetworkConfig


def los_probability(d_2d):
    """
    Probability of line of sight at 2-D distance ``d_2d`` meters.

    1 up to 18 m, then 18/d + exp(-d/36) * (1 - 18/d). Accepts arrays.
    """
    d = np.asarray(d_2d, dtype=float)
    if np.any(d < 0):
        raise ValueError("2-D distance must be non-negative")
    safe = np.maximum(d, 18.0)
    prob = np.where(d <= 18.0, 1.0, 18.0 / safe + np.exp(-safe / 36.0) * (1.0 - 18.0 / safe))
    if prob.ndim == 0:
        return float(prob)
    return prob


def path_loss_db(cfg: NetworkConfig, d_3d, los):
    """
    Pre-shadowing path loss in dB.

    LOS: 32.4 + 21 log10(d) + 20 log10(f_GHz).
    NLOS: max(LOS, 22.4 + 35.3 log10(d) + 21.3 log10(f_GHz) - 0.3 (h_UE - 1.5)).

    Raises:
        ValueError: If any 3-D distance is below 1 m
    """
    d = np.asarray(d_3d, dtype=float)
    if np.any(d < 1.0):
        raise ValueError(f"3-D distance below 1 m: {np.min(d)}")
    f_ghz = cfg.carrier_freq
    pl_los = 32.4 + 21.0 * np.log10(d) + 20.0 * np.log10(f_ghz)
    pl_nlos = np.maximum(
        pl_los,
        22.4 + 35.3 * np.log10(d) + 21.3 * np.log10(f_ghz) - 0.3 * (cfg.ue_height - 1.5),
    )
    pl = np.where(np.asarray(los, dtype=bool), pl_los, pl_nlos)
    if pl.ndim == 0:
        return float(pl)
    return pl
