"""Stateless 64-bit seed derivation.

Every chart seed is a pure function of ``(root_seed, index)`` so output does
not depend on worker count or scheduling order. The mixer is SplitMix64's
finaliser (constants 0x9E3779B97F4A7C15, 0xBF58476D1CE4E5B9,
0x94D049BB133111EB).
"""

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def splitmix64(x: int) -> int:
    z = (x + GOLDEN_GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def mix(seed: int, salt: int) -> int:
    """Combine a 64-bit seed with an integer salt into a new 64-bit seed."""
    return splitmix64((seed & MASK64) ^ splitmix64(salt & MASK64))


def chart_seed(root_seed: int, index: int) -> int:
    return mix(root_seed, index)


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed & MASK64))


def substream(seed: int, name: str) -> np.random.Generator:
    """Independent named stream so adding draws in one stage never shifts another."""
    salt = 0
    for b in name.encode("ascii"):
        salt = (salt * 131 + b) & MASK64
    return make_rng(mix(seed, salt))
