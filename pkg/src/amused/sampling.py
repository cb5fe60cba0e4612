"""Deterministic per-platform sampling primitives.

The generator is fully specified so any implementation, in any language,
reproduces the same selections bit-for-bit:

- hash64(name)   = FNV-1a 64-bit over the UTF-8 bytes of the platform name
                   (offset 14695981039346656037, prime 1099511628211).
- rng state0     = seed XOR hash64(platform); if zero, 0x9E3779B97F4A7C15.
- next()         = xorshift64*: x ^= x >> 12; x ^= (x << 25) & 2^64-1;
                   x ^= x >> 27; output (x * 2685821657736338717) mod 2^64.
- below(m)       = next() mod m.
- selection      = Floyd's algorithm over 0-based indices: for j in
                   [n-k, n): t = below(j+1); pick j if t already picked
                   else t. Candidates must be pre-sorted by the caller.
- sample size    = ceil(rate * n) computed in exact rational arithmetic.
"""

from __future__ import annotations

import math
from fractions import Fraction

MASK64 = (1 << 64) - 1
FNV_OFFSET = 14695981039346656037
FNV_PRIME = 1099511628211
XORSHIFT_MULT = 2685821657736338717
ZERO_SEED_REPLACEMENT = 0x9E3779B97F4A7C15


def fnv1a64(name: str) -> int:
    h = FNV_OFFSET
    for byte in name.encode("utf-8"):
        h = ((h ^ byte) * FNV_PRIME) & MASK64
    return h


class Xorshift64Star:
    def __init__(self, state: int):
        self.state = state & MASK64 or ZERO_SEED_REPLACEMENT

    def next(self) -> int:
        x = self.state
        x ^= x >> 12
        x = (x ^ (x << 25)) & MASK64
        x ^= x >> 27
        self.state = x
        return (x * XORSHIFT_MULT) & MASK64

    def below(self, m: int) -> int:
        return self.next() % m


def platform_rng(seed: int, platform_name: str) -> Xorshift64Star:
    return Xorshift64Star(seed ^ fnv1a64(platform_name))


def sample_size(rate: float | str | Fraction, n: int) -> int:
    """ceil(rate * n) without float round-off (0.1 * 30 stays 3)."""
    rate = Fraction(str(rate)) if not isinstance(rate, Fraction) else rate
    if not 0 < rate <= 1:
        raise ValueError(f"rate must be in (0, 1], got {rate}")
    return math.ceil(rate * n)


def floyd_sample(n: int, k: int, rng: Xorshift64Star) -> list[int]:
    """k distinct indices from range(n), uniformly, in ascending order."""
    if k > n:
        raise ValueError(f"cannot sample {k} from {n}")
    chosen: set[int] = set()
    for j in range(n - k, n):
        t = rng.below(j + 1)
        chosen.add(j if t in chosen else t)
    return sorted(chosen)
