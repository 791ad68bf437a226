"""
Seeded random streams.

One 64-bit master seed per experiment; every component draws from its own
child stream derived by hashing a label path, so adding a draw in one
component never shifts the numbers another component sees.
"""

from __future__ import annotations

import hashlib

import numpy as np

type Seed = int | np.random.Generator

_MASK64 = (1 << 64) - 1


def _label_word(label: str | int) -> int:
    digest = hashlib.blake2b(str(label).encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def derive_stream(master_seed: int, *labels: str | int) -> np.random.Generator:
    """Child generator for *labels* under *master_seed*."""
    entropy = [master_seed & _MASK64, *(_label_word(label) for label in labels)]
    return np.random.default_rng(np.random.SeedSequence(entropy))


def as_generator(seed: Seed | None) -> np.random.Generator:
    """Accept a seed or an existing generator; never share one implicitly."""
    if isinstance(seed, np.random.Generator):
        return seed
    if seed is None:
        return np.random.default_rng()
    return np.random.default_rng(seed & _MASK64)
