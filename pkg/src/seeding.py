"""Seeded numpy generators for reproducible runs."""
import numpy as np

SEED_MODULUS = 1 << 64


def normalize_seed(seed: int) -> int:
    """Map any integer seed, negative ones included, onto [0, 2^64)."""
    return int(seed) % SEED_MODULUS


def seeded_rng(seed: int, *stream: int) -> np.random.Generator:
    """Generator for `seed`, optionally split into an independent sub-stream."""
    if stream:
        return np.random.default_rng([normalize_seed(seed), *(normalize_seed(key) for key in stream)])
    return np.random.default_rng(normalize_seed(seed))
