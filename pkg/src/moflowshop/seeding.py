"""Deterministic 64-bit seed derivation and named random streams.

All randomness in the package flows through numpy's PCG64 generator. Seeds
for distinct purposes (instance matrix vs due dates vs weights, or one
experiment run vs another) are derived with an explicit, documented recipe so
that any single stream can be reproduced outside the package:

    derived = splitmix64(h XOR part)   folded left-to-right over the parts,
                                       starting from h = 0

Text parts (instance names) enter the mix as their FNV-1a 64-bit hash.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3


def splitmix64(state: int) -> int:
    """One output of the splitmix64 mixing function for the given state."""
    z = (state + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def fnv1a64(data: bytes) -> int:
    """FNV-1a hash of a byte string, 64-bit variant."""
    h = _FNV_OFFSET
    for byte in data:
        h = ((h ^ byte) * _FNV_PRIME) & MASK64
    return h


def mix64(*parts: int) -> int:
    """Fold integer parts into a single 64-bit seed (order-sensitive)."""
    if not parts:
        raise ValueError("mix64 needs at least one part")
    h = 0
    for part in parts:
        h = splitmix64(h ^ (int(part) & MASK64))
    return h


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(int(seed) & MASK64))


def purpose_rng(seed: int, purpose: int) -> np.random.Generator:
    """Independent stream for one purpose under a shared base seed."""
    return make_rng(mix64(seed, purpose))
