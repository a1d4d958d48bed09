"""SplitMix64 generator.

Chosen because it is a few lines in any language, so seeded test suites can be
reproduced exactly elsewhere.  Conventions:

* ``next_u64``: state += 0x9E3779B97F4A7C15, then the standard SplitMix64 mix.
* ``uniform``: top 53 bits of ``next_u64`` times 2**-53, in [0, 1).
* ``normal``: Box-Muller on two uniforms ``u1, u2`` as
  ``sqrt(-2 ln(1 - u1)) * cos(2 pi u2)`` (the sine branch is discarded).
* complex normals take the real part first, then the imaginary part.
"""
from __future__ import annotations

import math

_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = int(seed) & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def uniform(self) -> float:
        return (self.next_u64() >> 11) * 2.0**-53

    def normal(self) -> float:
        u1, u2 = self.uniform(), self.uniform()
        return math.sqrt(-2.0 * math.log1p(-u1)) * math.cos(2 * math.pi * u2)

    def complex_normal(self) -> complex:
        return complex(self.normal(), self.normal())

    def randint(self, lo: int, hi: int) -> int:
        """Integer in ``[lo, hi]`` (modulo bias is negligible for small ranges)."""
        return lo + self.next_u64() % (hi - lo + 1)


def derive_seed(master: int, *keys: int) -> int:
    """Per-sample seed from a master seed and integer keys."""
    g = SplitMix64(master)
    for k in keys:
        g = SplitMix64(g.next_u64() ^ (int(k) & _MASK))
    return g.next_u64()
