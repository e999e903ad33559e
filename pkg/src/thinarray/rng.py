"""
Seeded random streams.

Every random quantity in thinarray is drawn from a numpy Generator built from
a 64-bit seed. Work that may run in parallel (Monte Carlo iterations, mask
samples, forest trees, dataset rows) derives one seed per work item with
``mix64(master_seed, index)`` so results never depend on scheduling.
"""

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def mix64(seed: int, index: int) -> int:
    """
    Derive the seed of work item ``index`` from a master seed.

    SplitMix64: the state ``seed + (index + 1) * 0x9E3779B97F4A7C15`` (mod 2^64)
    is passed through the finalizer

        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
        z = (z ^ (z >> 27)) * 0x94D049BB133111EB
        z =  z ^ (z >> 31)

    which avalanches every input bit into every output bit.

    Args:
        seed: Master seed (any Python int, reduced mod 2^64)
        index: Non-negative work-item index

    Returns:
        Unsigned 64-bit integer seed
    """
    if index < 0:
        raise ValueError(f"Substream index must be non-negative, got {index}")
    z = (seed + (index + 1) * GOLDEN_GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def generator(seed: int) -> np.random.Generator:
    """Return a PCG64 generator seeded with ``seed`` reduced mod 2^64."""
    return np.random.Generator(np.random.PCG64(int(seed) & MASK64))


def substream(seed: int, index: int) -> np.random.Generator:
    """Return the generator of work item ``index`` under ``seed``."""
    return generator(mix64(seed, index))


def draw_seed(rng: np.random.Generator) -> int:
    """Draw a fresh 63-bit seed from an existing generator."""
    return int(rng.integers(0, 1 << 63, dtype=np.int64))
