"""Deterministic 64-bit random number generation.

Every stochastic component of the toolkit draws from SplitMix64 so that a
seed fully determines an experiment on any platform: state advances by the
golden-gamma increment and is finalised with two xorshift-multiply rounds
(constants from Vigna's reference implementation). Uniform doubles take the
top 53 bits; normal variates use the Box-Muller transform, cosine branch
only, consuming exactly two uniforms per draw. Both choices are frozen:
changing them would silently regenerate every seeded instance differently.
"""

from __future__ import annotations

import math

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
MIX_1 = 0xBF58476D1CE4E5B9
MIX_2 = 0x94D049BB133111EB

_TWO_PI = 2.0 * math.pi
_INV_2_53 = 2.0 ** -53


def mix64(x: int) -> int:
    """SplitMix64 output finaliser (a bijection on 64-bit integers)."""
    z = x & MASK64
    z = ((z ^ (z >> 30)) * MIX_1) & MASK64
    z = ((z ^ (z >> 27)) * MIX_2) & MASK64
    return z ^ (z >> 31)


def derive_seed(master: int, *parts: int) -> int:
    """Stable child seed from a master seed and a tuple of integer indices.

    Used to give every instance and every run of an experiment its own
    independent stream while keeping the whole experiment a pure function
    of the master seed.
    """
    h = mix64(master)
    for p in parts:
        h = mix64(h ^ mix64((p & MASK64) + GAMMA))
    return h


class SplitMix64:
    """A single sequential random stream. Not thread-safe; one per run."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GAMMA) & MASK64
        return mix64(self.state)

    def uniform(self) -> float:
        """Uniform double in [0, 1)."""
        return (self.next_u64() >> 11) * _INV_2_53

    def below(self, m: int) -> int:
        """Unbiased uniform integer in [0, m); rejection on the tail block."""
        if m <= 0:
            raise ValueError("below() needs a positive bound")
        lim = ((1 << 64) // m) * m
        x = self.next_u64()
        while x >= lim:
            x = self.next_u64()
        return x % m

    def normal(self, mu: float = 0.0, sigma: float = 1.0) -> float:
        # 1 - u keeps the log argument in (0, 1]
        u1 = 1.0 - self.uniform()
        u2 = self.uniform()
        z = math.sqrt(-2.0 * math.log(u1)) * math.cos(_TWO_PI * u2)
        return mu + sigma * z
