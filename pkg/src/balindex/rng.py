"""Deterministic 64-bit generator for the sweep harness.

SplitMix64: state advances by 0x9E3779B97F4A7C15; the output mix is
(x ^= x >> 30) * 0xBF58476D1CE4E5B9, (x ^= x >> 27) * 0x94D049BB133111EB,
x ^= x >> 31.  Sweeps driven by the same seed reproduce bit-for-bit in any
implementation of the same recipe; intervals are sampled by modulus.
"""

MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK
        x = self.state
        x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK
        return (x ^ (x >> 31)) & MASK

    def randint(self, lo: int, hi: int) -> int:
        """Uniform-ish integer in [lo, hi] (modulus sampling, documented)."""
        if hi < lo:
            raise ValueError("empty range")
        return lo + self.next_u64() % (hi - lo + 1)

    def random_matrix_entries(self, n: int, bound: int) -> list[list[int]]:
        return [[self.randint(-bound, bound) for _ in range(n)] for _ in range(n)]
