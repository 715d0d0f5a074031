"""Deterministic pseudo-random numbers via splitmix64.

Every stochastic component in the toolkit (bootstrap draws, feature
subsets, epoch shuffles, weight initialization) pulls from this generator
so that a fixed seed yields byte-identical models on any platform.

Draw-order contract: each training routine documents the exact sequence of
calls it makes, and ensemble members use `derive(seed, index)` so members
are independent of training order.
"""

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _mix(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive(seed: int, index: int) -> int:
    """Seed for the index-th child stream of `seed` (ensemble members)."""
    return _mix((seed + (index + 1) * _GOLDEN) & _MASK64)


class SplitMix64:
    """splitmix64 generator; state advances by the 64-bit golden ratio."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_uint64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK64
        return _mix(self._state)

    def next_float(self) -> float:
        """Uniform double in [0, 1) built from the top 53 bits."""
        return (self.next_uint64() >> 11) * 2.0**-53

    def next_below(self, n: int) -> int:
        """Uniform integer in [0, n). Plain modulo; the tiny bias is
        irrelevant here and keeps the draw order trivial to replicate."""
        if n <= 0:
            raise ValueError("next_below needs n >= 1")
        return self.next_uint64() % n

    def uniform(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.next_float()

    def shuffle(self, seq: list) -> None:
        """In-place Fisher-Yates, iterating from the last index down."""
        for i in range(len(seq) - 1, 0, -1):
            j = self.next_below(i + 1)
            seq[i], seq[j] = seq[j], seq[i]

    def sample_indices(self, n: int, k: int) -> list[int]:
        """k distinct indices from range(n), returned sorted.

        Partial Fisher-Yates: exactly k `next_below` draws. Callers that
        want the full range must skip the call entirely (no draws) so that
        subset-of-everything reduces exactly to the no-subset code path.
        """
        pool = list(range(n))
        for i in range(k):
            j = i + self.next_below(n - i)
            pool[i], pool[j] = pool[j], pool[i]
        return sorted(pool[:k])
