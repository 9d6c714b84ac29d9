"""Deterministic hashing and sampling utilities.

Everything random in this package is derived from splitmix64 so that
builds are reproducible from (seed, id) pairs alone and nothing about a
sampling decision ever needs to be stored.
"""
from __future__ import annotations

import math

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(x: int) -> int:
    x = (x + _GOLDEN) & _MASK
    z = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def hash64(seed: int, x: int) -> int:
    """64-bit hash of (seed, x), uniform over [0, 2^64)."""
    return splitmix64(splitmix64(seed & _MASK) ^ (x & _MASK))


def uniform01(seed: int, x: int) -> float:
    """Deterministic uniform draw in (0, 1] for (seed, x)."""
    return (hash64(seed, x) + 1) / 18446744073709551616.0


def exponential(seed: int, x: int, rate: float) -> float:
    """Deterministic Exp(rate) draw for (seed, x) via inverse CDF."""
    return -math.log(uniform01(seed, x)) / rate


class SplitMix:
    """Sequential PRNG used by the graph generator."""

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK
        return splitmix64(self._state)

    def randrange(self, n: int) -> int:
        if n <= 0:
            raise ValueError("randrange bound must be positive")
        return self.next_u64() % n

    def random(self) -> float:
        return self.next_u64() / 18446744073709551616.0
