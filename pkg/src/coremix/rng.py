"""Seeded random streams.

All randomness flows through Philox, a counter-based 64-bit generator.
Substreams are derived as ``SeedSequence((seed, *key))``, so the per-trial
stream of an experiment is ``substream(base_seed, trial_index)``.  This rule
makes trials independent, order-insensitive and reproducible across worker
counts and platforms.
"""

from __future__ import annotations

import numpy as np


def substream(seed: int, *key: int) -> np.random.Generator:
    """Return the Philox generator for ``(seed, *key)``."""
    ss = np.random.SeedSequence((int(seed),) + tuple(int(k) for k in key))
    return np.random.Generator(np.random.Philox(ss))
