"""Static range-argmax over a real sequence.

Sparse table: O(n log n) build, O(1) query, deterministic tie-breaks.  The
heavy-path structures keep two of these over concatenated per-path sequences
and query inside single-path slices.
"""

from __future__ import annotations

import numpy as np


class RangeArgmax:
    """Answers argmax over any closed index interval of a fixed sequence."""

    def __init__(self, values):
        values = np.asarray(values, dtype=np.float64)
        self.values = values
        n = values.shape[0]
        self.n = n
        if n == 0:
            self._levels = [np.empty(0, dtype=np.int64)]
            return
        levels = [np.arange(n, dtype=np.int64)]
        span = 1
        while 2 * span <= n:
            prev = levels[-1]
            left = prev[: n - 2 * span + 1]
            right = prev[span : n - span + 1]
            levels.append(np.where(values[left] >= values[right], left, right))
            span *= 2
        self._levels = levels

    def query(self, lo: int, hi: int) -> tuple[int, float]:
        """Index and value of the maximum on [lo, hi] (inclusive)."""
        if lo < 0 or hi >= self.n:
            raise IndexError(f"interval [{lo}, {hi}] out of range (n={self.n})")
        if lo > hi:
            raise IndexError(f"empty interval [{lo}, {hi}]")
        k = (hi - lo + 1).bit_length() - 1
        level = self._levels[k]
        a = level[lo]
        b = level[hi - (1 << k) + 1]
        idx = int(a if self.values[a] >= self.values[b] else b)
        return idx, float(self.values[idx])
