"""Seeded randomness.

Every random stream in the package comes from numpy's Philox4x64-10, a
counter-based generator keyed by the 64-bit seed, so streams are
reproducible across platforms and across independent implementations that
use the same generator.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1


def make_rng(seed: int | None = 0, stream: int = 0) -> np.random.Generator:
    """Generator keyed by ``(seed, stream)``; ``stream`` selects an independent substream."""
    seed = 0 if seed is None else int(seed) & MASK64
    key = seed | ((int(stream) & MASK64) << 64)
    return np.random.Generator(np.random.Philox(key=key))
