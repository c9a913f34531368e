"""Static k-dimensional box range-maximum over valued integer points.

``RangeTree`` answers "which point inside this box has the largest value"
after a one-off build.  Equality / exclusion style constraints are expanded
into products of coordinate intervals (two per "not equal", three per "not
in {a, b}") and resolved as plain box queries.

Mechanism: a balanced space-partition tree (median splits cycling through
the dimensions, bucket leaves, subtree maxima for pruning) rather than a
layered multi-level range tree — the layered structure's size grows with a
log factor per dimension, which is unusable at the 8- to 12-dimensional
shapes the system-eccentricity indexes need.  Queries prune by subtree
maximum and are typically logarithmic; the contract (exact box maxima, empty
result as a first-class value) is unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Any

import numpy as np

from .extreal import NEG_INF, POS_INF

_LEAF = 16


@dataclass(frozen=True)
class ValuedPoint:
    coords: tuple[int, ...]
    value: float
    payload: Any = None


# -- coordinate constraints -------------------------------------------------

@dataclass(frozen=True)
class Anything:
    def intervals(self):
        return [(NEG_INF, POS_INF)]


@dataclass(frozen=True)
class Eq:
    a: int

    def intervals(self):
        return [(self.a, self.a)]


@dataclass(frozen=True)
class AtMost:
    a: int

    def intervals(self):
        return [(NEG_INF, self.a)]


@dataclass(frozen=True)
class NotEq:
    a: int

    def intervals(self):
        return [(NEG_INF, self.a - 1), (self.a + 1, POS_INF)]


@dataclass(frozen=True)
class NotIn:
    a: int
    b: int

    def __post_init__(self):
        if self.a == self.b:
            raise ValueError("NotIn needs two distinct values")

    def intervals(self):
        lo, hi = sorted((self.a, self.b))
        # the middle interval may be empty (hi == lo + 1); it is kept so the
        # expansion size stays exactly 3 per NotIn constraint
        return [(NEG_INF, lo - 1), (lo + 1, hi - 1), (hi + 1, POS_INF)]


ANY = Anything()


def constraint_boxes(constraints):
    """All boxes in the expansion of a constraint tuple."""
    return [
        tuple(box) for box in product(*(c.intervals() for c in constraints))
    ]


# -- the structure ----------------------------------------------------------

class RangeTree:
    def __init__(self, points, dimension: int):
        if dimension < 1:
            raise ValueError("dimension must be positive")
        self.dimension = dimension
        pts = list(points)
        for p in pts:
            if len(p.coords) != dimension:
                raise ValueError(
                    f"point {p.coords} does not have {dimension} coordinates"
                )
        self.size = len(pts)
        self.coords = np.array(
            [p.coords for p in pts], dtype=np.int64
        ).reshape(self.size, dimension)
        self.values = np.array([p.value for p in pts], dtype=np.float64)
        self.payloads = [p.payload for p in pts]
        self.perm = np.arange(self.size, dtype=np.int64)
        # flat node arrays: split dim/value, children, bucket range, max
        self._split_dim: list[int] = []
        self._split_val: list[int] = []
        self._left: list[int] = []
        self._right: list[int] = []
        self._lo: list[int] = []
        self._hi: list[int] = []
        self._max: list[float] = []
        if self.size:
            self._build(0, self.size, 0)

    def _new_node(self, lo, hi):
        self._split_dim.append(-1)
        self._split_val.append(0)
        self._left.append(-1)
        self._right.append(-1)
        self._lo.append(lo)
        self._hi.append(hi)
        self._max.append(float(self.values[self.perm[lo:hi]].max()))
        return len(self._max) - 1

    def _build(self, lo, hi, depth) -> int:
        node = self._new_node(lo, hi)
        count = hi - lo
        if count <= _LEAF:
            return node
        rows = self.perm[lo:hi]
        # pick the next splitting dimension with any spread; identical
        # points across all dimensions stay one bucket
        for probe in range(self.dimension):
            dim = (depth + probe) % self.dimension
            col = self.coords[rows, dim]
            cmin = col.min()
            if cmin != col.max():
                median = int(np.median(col))
                if median == col.max():
                    median -= 1  # keep both sides nonempty
                mask = col <= median
                left_rows = rows[mask]
                right_rows = rows[~mask]
                self.perm[lo : lo + left_rows.size] = left_rows
                self.perm[lo + left_rows.size : hi] = right_rows
                self._split_dim[node] = dim
                self._split_val[node] = median
                self._left[node] = self._build(
                    lo, lo + left_rows.size, depth + 1
                )
                self._right[node] = self._build(
                    lo + left_rows.size, hi, depth + 1
                )
                return node
        return node  # all coordinates equal: bucket of duplicates

    def query_box(self, box):
        """Best (value, payload) among points inside the box, or None.

        ``box`` gives one closed interval per dimension; interval ends may
        be +-inf.
        """
        if len(box) != self.dimension:
            raise ValueError("box dimension mismatch")
        if self.size == 0:
            return None
        lows = [b[0] for b in box]
        highs = [b[1] for b in box]
        best_row = self._descend(0, lows, highs, NEG_INF, -1)[1]
        if best_row < 0:
            return None
        return float(self.values[best_row]), self.payloads[best_row]

    def _descend(self, node, lows, highs, best, best_row):
        if self._max[node] <= best:
            return best, best_row
        dim = self._split_dim[node]
        if dim < 0:
            rows = self.perm[self._lo[node] : self._hi[node]]
            pts = self.coords[rows]
            mask = np.ones(rows.shape[0], dtype=bool)
            for d in range(self.dimension):
                mask &= (pts[:, d] >= lows[d]) & (pts[:, d] <= highs[d])
            if mask.any():
                cand = rows[mask]
                top = cand[int(np.argmax(self.values[cand]))]
                if self.values[top] > best:
                    return float(self.values[top]), int(top)
            return best, best_row
        split = self._split_val[node]
        if lows[dim] <= split:
            best, best_row = self._descend(
                self._left[node], lows, highs, best, best_row
            )
        if highs[dim] > split:
            best, best_row = self._descend(
                self._right[node], lows, highs, best, best_row
            )
        return best, best_row

    def query_constrained(self, constraints):
        """Best point satisfying all coordinate constraints, or None."""
        if len(constraints) != self.dimension:
            raise ValueError("constraint dimension mismatch")
        best = None
        for box in constraint_boxes(constraints):
            res = self.query_box(box)
            if res is not None and (best is None or res[0] > best[0]):
                best = res
        return best
