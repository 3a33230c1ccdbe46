"""Seeded 64-bit mixing shared by every deterministic hash in the package.

All bin placements and priority keys are derived from ``mix64`` chains with
explicitly passed seeds, so any result is reproducible from its seed alone.
Bit-exactness is promised within one build of this library, not across
implementations.
"""
from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1

GOLDEN = 0x9E3779B97F4A7C15
_MUL1 = 0xBF58476D1CE4E5B9
_MUL2 = 0x94D049BB133111EB


def mix64(x: int) -> int:
    """SplitMix64 finalizer: a fixed, well-scrambling bijection on 64-bit words."""
    x &= MASK64
    x = ((x ^ (x >> 30)) * _MUL1) & MASK64
    x = ((x ^ (x >> 27)) * _MUL2) & MASK64
    return x ^ (x >> 31)


def derive(*parts: int) -> int:
    """Fold integers into a single 64-bit seed. Order-sensitive."""
    acc = GOLDEN
    for p in parts:
        acc = mix64(acc ^ ((p * GOLDEN) & MASK64))
    return acc


def mix64_np(x: np.ndarray) -> np.ndarray:
    """Vectorized :func:`mix64` over a uint64 array, bit-identical to the scalar."""
    x = x.astype(np.uint64, copy=True)
    x ^= x >> np.uint64(30)
    x *= np.uint64(_MUL1)
    x ^= x >> np.uint64(27)
    x *= np.uint64(_MUL2)
    x ^= x >> np.uint64(31)
    return x
