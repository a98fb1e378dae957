"""Deterministic, platform-independent randomness for all sampling in hyperlift.

Everything random in this package is driven by SplitMix64 streams derived
from a user-supplied 64-bit seed.  The stream-splitting rule is:

    substream(seed, *tags) = SplitMix64 stream seeded with mix64(seed, *tags)

where ``mix64`` folds each integer tag through one SplitMix64 step.  Rank
space for hyperedge generation is partitioned into fixed blocks of
``BLOCK_SIZE`` consecutive ranks; block b is sampled from
``substream(seed, GEN_TAG, b)``, so blocks can be generated in any order
(or in parallel) with results identical to sequential generation.

Floating-point draws are ``(x >> 11) * 2**-53`` from 64-bit outputs, i.e.
uniform on [0, 1) with 53 bits, identical on any IEEE-754 platform.
"""

from __future__ import annotations

import math

_MASK64 = (1 << 64) - 1

# Tags naming the independent substreams of one seed.
GEN_TAG = 0x67656E  # hyperedge-rank blocks
SIGMA_TAG = 0x736967  # HSBM label assignment
TRIAL_TAG = 0x747269  # per-trial / per-replicate derivation

BLOCK_SIZE = 1 << 16


def _splitmix64(state: int) -> tuple[int, int]:
    """Advance a SplitMix64 state, returning (new_state, output)."""
    state = (state + 0x9E3779B97F4A7C15) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return state, z ^ (z >> 31)


def mix64(*values: int) -> int:
    """Fold integers into one 64-bit value (the substream derivation rule)."""
    state = 0x243F6A8885A308D3  # pi, to avoid the all-zero fixpoint
    for v in values:
        state = (state ^ (v & _MASK64)) & _MASK64
        state, _ = _splitmix64(state)
    _, out = _splitmix64(state)
    return out


class Stream:
    """A single SplitMix64 stream."""

    __slots__ = ("_state",)

    def __init__(self, seed: int) -> None:
        self._state = seed & _MASK64

    def u64(self) -> int:
        self._state, out = _splitmix64(self._state)
        return out

    def random(self) -> float:
        """Uniform float in [0, 1) with 53 bits of precision."""
        return (self.u64() >> 11) * 2.0**-53

    def randrange(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection (exact, unbiased)."""
        if n <= 0:
            raise ValueError("randrange needs n >= 1")
        nbits = (n - 1).bit_length()
        while True:
            r = self.u64() >> (64 - nbits) if nbits else 0
            if r < n:
                return r

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randrange(i + 1)
            items[i], items[j] = items[j], items[i]


def substream(seed: int, *tags: int) -> Stream:
    return Stream(mix64(seed, *tags))


def bernoulli_ranks(seed: int, total: int, p: float) -> list[int]:
    """Ranks r in [0, total) kept by independent Bernoulli(p) trials.

    Uses geometric skip-sampling within each rank block, so the cost is
    O(#kept + #blocks) rather than O(total).  Equivalent in distribution to
    flipping one coin per rank, and deterministic per (seed, total, p).
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability out of range: {p}")
    if p == 0.0 or total == 0:
        return []
    if p == 1.0:
        return list(range(total))
    log1mp = math.log1p(-p)
    out: list[int] = []
    for start in range(0, total, BLOCK_SIZE):
        stop = min(start + BLOCK_SIZE, total)
        rng = substream(seed, GEN_TAG, start // BLOCK_SIZE)
        pos = start
        while True:
            gap = int(math.log1p(-rng.random()) / log1mp)
            pos += gap
            if pos >= stop:
                break
            out.append(pos)
            pos += 1
    return out


def thinned_ranks(seed: int, total: int, p_max: float, keep) -> list[int]:
    """Bernoulli ranks at non-uniform rates via sampling at p_max and thinning.

    ``keep(rank, u)`` decides acceptance of a candidate rank given one
    uniform draw u; it must return True with probability p(rank)/p_max for
    the intended per-rank rate p(rank) <= p_max.  One thinning draw is
    consumed per candidate so the stream layout does not depend on ``keep``.
    """
    if not 0.0 < p_max <= 1.0:
        if p_max == 0.0:
            return []
        raise ValueError(f"probability out of range: {p_max}")
    log1mp = math.log1p(-p_max) if p_max < 1.0 else None
    out: list[int] = []
    for start in range(0, total, BLOCK_SIZE):
        stop = min(start + BLOCK_SIZE, total)
        rng = substream(seed, GEN_TAG, start // BLOCK_SIZE)
        pos = start
        while True:
            if log1mp is None:
                gap = 0
            else:
                gap = int(math.log1p(-rng.random()) / log1mp)
            pos += gap
            if pos >= stop:
                break
            u = rng.random()
            if keep(pos, u):
                out.append(pos)
            pos += 1
    return out
