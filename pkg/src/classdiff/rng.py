"""Portable seeded random stream: xoshiro256** seeded through splitmix64.

The stream is fully specified so that runs can be reproduced outside
Python:

* state: four 64-bit words, produced by four successive splitmix64 outputs
  starting from the seed;
* ``next_u64``: xoshiro256** (``rotl(s1 * 5, 7) * 9``);
* ``uniform``: ``(next_u64() >> 11) * 2**-53``, in [0, 1);
* ``below(n)``: ``floor(uniform() * n)``;
* ``normal``: Box-Muller on two uniforms ``u1, u2`` giving
  ``sqrt(-2 ln(1 - u1)) * cos(2 pi u2)``; one draw consumes two uniforms,
  the sine half is discarded.
"""

import math

import numpy as np

__all__ = ["Xoshiro256", "splitmix64"]

MASK = (1 << 64) - 1
_INV_2_53 = 1.0 / (1 << 53)


def splitmix64(state):
    """One splitmix64 step; returns ``(new_state, output)``."""
    state = (state + 0x9E3779B97F4A7C15) & MASK
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
    return state, z ^ (z >> 31)


def _rotl(x, k):
    return ((x << k) | (x >> (64 - k))) & MASK


class Xoshiro256:
    def __init__(self, seed):
        sm = int(seed) & MASK
        words = []
        for _ in range(4):
            sm, out = splitmix64(sm)
            words.append(out)
        self._s = words

    def next_u64(self):
        s0, s1, s2, s3 = self._s
        result = (_rotl((s1 * 5) & MASK, 7) * 9) & MASK
        t = (s1 << 17) & MASK
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self._s = [s0, s1, s2, s3]
        return result

    def uniform(self):
        return (self.next_u64() >> 11) * _INV_2_53

    def uniforms(self, n):
        return np.array([self.uniform() for _ in range(n)])

    def below(self, n):
        return int(self.uniform() * n)

    def normal(self):
        u1, u2 = self.uniform(), self.uniform()
        return math.sqrt(-2.0 * math.log(1.0 - u1)) * math.cos(2.0 * math.pi * u2)

    def normals(self, n):
        return np.array([self.normal() for _ in range(n)])

    def permutation(self, n):
        """Fisher-Yates shuffle of ``range(n)``, swapping from the top down."""
        perm = list(range(n))
        for i in range(n - 1, 0, -1):
            j = self.below(i + 1)
            perm[i], perm[j] = perm[j], perm[i]
        return np.array(perm, dtype=np.int64)
