"""
Counter-based SplitMix64 generator.

Instance identity is defined by this generator rather than by numpy's
bit generators, so (n, m, k, mode, seed) names the same clause list on
every platform and library version.
"""

from typing import List, Tuple

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def splitmix64_mix(z: int) -> int:
    """SplitMix64 output finalizer; a bijection on 64-bit integers."""
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(master: int, instance_index: int, repetition_index: int) -> int:
    """
    Derive the 64-bit seed of one (instance, repetition) task.

    The result is the (key + 1)-th SplitMix64 output of a generator seeded
    with ``master``, where key = instance_index * 2**32 + repetition_index.
    For a fixed master the map is injective over indices below 2**32.
    """
    if not 0 <= instance_index < 1 << 32 or not 0 <= repetition_index < 1 << 32:
        raise ValueError("seed indices must lie in [0, 2**32)")
    key = (instance_index << 32) | repetition_index
    return splitmix64_mix((master + (key + 1) * GOLDEN_GAMMA) & MASK64)


class SplitMix64:
    """Sequential SplitMix64 stream."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        return splitmix64_mix(self.state)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound) by rejection of the biased tail."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        threshold = (1 << 64) % bound
        while True:
            r = self.next_u64()
            if r >= threshold:
                return r % bound

    def coin(self) -> bool:
        return bool(self.next_u64() >> 63)

    def sample_distinct(self, n: int, k: int) -> Tuple[int, ...]:
        """Uniform k-subset of range(n), returned in ascending order."""
        chosen: List[int] = []
        while len(chosen) < k:
            v = self.below(n)
            if v not in chosen:
                chosen.append(v)
        return tuple(sorted(chosen))
