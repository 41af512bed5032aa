"""SplitMix64 generator used for every seeded draw in the package.

numpy's generators are avoided here so that seeds stay portable: the same
seed gives the same angles and initial coefficients on any platform.
"""

from __future__ import annotations

import math

MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        if seed < 0 or seed > MASK64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
        self.state = seed

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def uniform(self) -> float:
        """Float in [0, 1) built from the top 53 bits."""
        return (self.next_u64() >> 11) / 2.0**53

    def angle(self) -> float:
        return self.uniform() * 2.0 * math.pi

    def symmetric(self) -> float:
        """Float in [-1, 1)."""
        return 2.0 * self.uniform() - 1.0


def derive_seed(master: int, index: int) -> int:
    """First SplitMix64 output seeded with ``master ^ index``."""
    return SplitMix64((master ^ index) & MASK64).next_u64()
