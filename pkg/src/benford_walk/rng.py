"""Seed derivation and the xoshiro256++ uniform generator.

Both are specified at the bit level so trajectories can be reproduced by any
implementation of the same algorithms, independent of numpy's bit generators.
"""

import math

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15

_TWO_M53 = 2.0**-53


def splitmix64_mix(z):
    """SplitMix64 finalizer (bijective on 64-bit integers)."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(master, index):
    """Child seed number ``index`` of ``master``.

    ``derive_seed(m, i) = mix(m + i * 0x9E3779B97F4A7C15 mod 2**64)``. Distinct
    indices below ``2**64`` give distinct seeds because the multiplier is odd
    and the finalizer is a bijection.
    """
    if index < 0:
        raise ValueError("index must be non-negative")
    return splitmix64_mix((int(master) + int(index) * GOLDEN_GAMMA) & MASK64)


def _rotl(x, k):
    return ((x << k) | (x >> (64 - k))) & MASK64


class Xoshiro256pp:
    """xoshiro256++ seeded from four children of one 64-bit seed.

    Normal deviates use the Marsaglia polar method; the second deviate of each
    accepted pair is cached and returned by the next call.
    """

    __slots__ = ("_s0", "_s1", "_s2", "_s3", "_spare")

    def __init__(self, seed=None, *, state=None):
        if state is None:
            state = [derive_seed(seed, i) for i in range(4)]
        s0, s1, s2, s3 = (int(v) & MASK64 for v in state)
        if not (s0 | s1 | s2 | s3):
            raise ValueError("xoshiro256++ state must not be all zero")
        self._s0, self._s1, self._s2, self._s3 = s0, s1, s2, s3
        self._spare = None

    @property
    def state(self):
        return (self._s0, self._s1, self._s2, self._s3)

    def next_u64(self):
        s0, s1, s2, s3 = self._s0, self._s1, self._s2, self._s3
        s = (s0 + s3) & MASK64
        result = ((((s << 23) | (s >> 41)) & MASK64) + s0) & MASK64
        t = (s1 << 17) & MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        self._s0, self._s1, self._s2 = s0, s1, s2
        self._s3 = ((s3 << 45) | (s3 >> 19)) & MASK64
        return result

    def uniform(self):
        """Uniform double on ``[0, 1)`` with 53 random bits."""
        return (self.next_u64() >> 11) * _TWO_M53

    def uniform_open(self):
        """Uniform double on the open interval ``(0, 1)``."""
        return ((self.next_u64() >> 11) + 0.5) * _TWO_M53

    def normal(self):
        spare = self._spare
        if spare is not None:
            self._spare = None
            return spare
        while True:
            u = 2.0 * self.uniform() - 1.0
            v = 2.0 * self.uniform() - 1.0
            s = u * u + v * v
            if 0.0 < s < 1.0:
                break
        f = math.sqrt(-2.0 * math.log(s) / s)
        self._spare = v * f
        return u * f

    def exponential(self, rate=1.0):
        return -math.log(self.uniform_open()) / rate
