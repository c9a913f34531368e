"""Farthest-point query indexes over a system of trees.

Given trees T_1..T_k and a set S of coordinate tuples, each index answers,
for a query tuple v, the maximum over s in S of the combined coordinate
distances:

- :class:`SumEccIndex`   combines by sum (Cartesian-product distance),
- :class:`MinEccIndex`   combines by minimum (system distance),
- :class:`MaxEccIndex`   combines by maximum (strong-product distance).

Sum and min share one engine.  Every s contributes a point per tuple of
centroid-decomposition ancestors of its coordinates; a query enumerates the
ancestor tuples of its own coordinates and, per tuple ("cell"), asks for the
best stored point whose step-down neighbours differ from the query's -- that
is exactly the set of s whose coordinate paths split from v at this cell, so
stored distance plus query-side distance is the true distance.  Cells are
hash-partitioned on the ancestor tuple; inside a cell, points are value
sorted and scanned with the exclusion filters (first hit wins), the whole
walk running in the compiled kernel when available.  The literal flat
range-tree formulation over 2k-dimensional points is kept available via
``as_range_tree``/``query_via_range_tree`` and checked against the fast
path in the tests.

The max combiner decomposes per tree: prune each tree to the closure of the
projection of S, precompute eccentricities inside the pruned core and the
hang-off points of everything outside, then answer queries in O(k).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from . import _kernels
from ._kernels import bfs as _bfs
from ._kernels import bfs_labeled as _bfs_labeled
from .centroid import CentroidIndex, centroid_decomposition
from .range_tree import ANY, AtMost, Eq, NotEq, RangeTree, ValuedPoint
from .tree import Tree


@dataclass
class TreeSystem:
    trees: list[Tree]

    def __post_init__(self):
        if not self.trees:
            raise ValueError("a system needs at least one tree")

    @property
    def k(self) -> int:
        return len(self.trees)

    @property
    def total_nodes(self) -> int:
        return sum(t.node_count for t in self.trees)

    def check_point(self, pt):
        if len(pt) != self.k:
            raise ValueError(f"point {pt} is not {self.k}-dimensional")
        for i, (x, t) in enumerate(zip(pt, self.trees)):
            if not 0 <= x < t.node_count:
                raise ValueError(
                    f"coordinate {x} out of range for tree {i} "
                    f"(size {t.node_count})"
                )


def _normalize_points(system: TreeSystem, points):
    pts = [tuple(int(x) for x in p) for p in points]
    if not pts:
        raise ValueError("S must be nonempty")
    for p in pts:
        system.check_point(p)
    return pts


class _CellIndex:
    """Shared engine of the sum and min indexes."""

    def __init__(self, system: TreeSystem, points, mode: str):
        assert mode in ("sum", "min")
        self.system = system
        self.mode = mode
        self.points = _normalize_points(system, points)
        if system.total_nodes > 2**31 - 1:
            raise ValueError("system too large for 32-bit distances")
        self.decomps: list[CentroidIndex] = [
            centroid_decomposition(t) for t in system.trees
        ]
        k = system.k
        sizes = [t.node_count for t in system.trees]
        strides = np.ones(k, dtype=np.int64)
        limit = 2**62 // (k if mode == "min" else 1)
        packable = True
        acc = 1
        for i in range(k):
            strides[i] = acc
            if acc > limit // max(sizes[i], 1):
                packable = False
                break
            acc *= sizes[i]
        self.packable = packable
        self.strides = strides

        pieces_c, pieces_w, pieces_d, pieces_s = [], [], [], []
        for sidx, p in enumerate(self.points):
            cols_c, cols_w, cols_d = [], [], []
            for i, x in enumerate(p):
                path = self.decomps[i].paths[x]
                c = np.fromiter((e[0] for e in path), np.int64, len(path))
                d = np.fromiter((e[1] for e in path), np.int64, len(path))
                # step-down neighbour toward x: previous entry, x at itself
                w = np.empty(len(path), dtype=np.int64)
                w[0] = x
                w[1:] = c[:-1]
                cols_c.append(c)
                cols_w.append(w)
                cols_d.append(d)
            mesh_c = np.meshgrid(*cols_c, indexing="ij")
            mesh_w = np.meshgrid(*cols_w, indexing="ij")
            mesh_d = np.meshgrid(*cols_d, indexing="ij")
            m = mesh_c[0].size
            pieces_c.append(np.stack([g.reshape(m) for g in mesh_c], axis=1))
            pieces_w.append(np.stack([g.reshape(m) for g in mesh_w], axis=1))
            pieces_d.append(np.stack([g.reshape(m) for g in mesh_d], axis=1))
            pieces_s.append(np.full(m, sidx, dtype=np.int32))
        cells = np.concatenate(pieces_c)     # (P, k) ancestor tuples
        evens = np.concatenate(pieces_w)     # (P, k) step-down neighbours
        dists = np.concatenate(pieces_d)     # (P, k) stored distances
        sidx = np.concatenate(pieces_s)

        if mode == "min":
            # one point per (cell, coordinate slot) pair
            base = dists.shape[0]
            cells = np.tile(cells, (k, 1))
            evens = np.tile(evens, (k, 1))
            sidx = np.tile(sidx, k)
            which = np.repeat(np.arange(k, dtype=np.int64), base)
            fvals = np.concatenate([dists[:, i] for i in range(k)])
            deltas = np.concatenate(
                [
                    np.stack(
                        [dists[:, i] - dists[:, j] for j in range(k) if j != i],
                        axis=1,
                    )
                    if k > 1
                    else np.empty((base, 0), dtype=np.int64)
                    for i in range(k)
                ]
            )
        else:
            fvals = dists.sum(axis=1)
            deltas = np.empty((cells.shape[0], 0), dtype=np.int64)
            which = np.zeros(cells.shape[0], dtype=np.int64)

        # group by cell (and coordinate slot for min), value descending
        if self.packable:
            keys = cells @ strides
            if mode == "min":
                keys = keys * k + which
            order = np.lexsort((-fvals, keys))
        else:
            key_cols = [cells[:, i] for i in range(k)]
            if mode == "min":
                key_cols.append(which)
            order = np.lexsort(tuple([-fvals] + key_cols[::-1]))
        cells = cells[order]
        self.evens = np.ascontiguousarray(evens[order], dtype=np.int32)
        self.fvals = np.ascontiguousarray(fvals[order], dtype=np.int64)
        self.sidx = sidx[order]
        self.deltas = np.ascontiguousarray(deltas[order], dtype=np.int32)
        which = which[order]
        self.which = which
        self.point_count = cells.shape[0]

        if self.packable:
            keys = keys[order]
            boundaries = np.flatnonzero(np.diff(keys, prepend=keys[0] - 1))
            self.cell_keys = np.ascontiguousarray(keys[boundaries])
            self.cell_lo = np.ascontiguousarray(boundaries.astype(np.int64))
            self.cell_hi = np.ascontiguousarray(
                np.append(boundaries[1:], keys.shape[0]).astype(np.int64)
            )
            self._cell_map = None
        else:
            self._cell_map = self._build_cell_map(cells, which)
        self._cells_sorted = cells

    def _build_cell_map(self, cells, which):
        cell_map: dict[tuple, list[int]] = {}
        last = None
        for row in range(cells.shape[0]):
            key = tuple(cells[row]) + (
                (int(which[row]),) if self.mode == "min" else ()
            )
            if key != last:
                cell_map[key] = [row, row + 1]
                last = key
            else:
                cell_map[key][1] = row + 1
        return cell_map

    def _force_tuple_path(self):
        """Route queries through the dict-keyed fallback (tests only)."""
        self._cell_map = self._build_cell_map(self._cells_sorted, self.which)

    # -- query-side ancestor data --------------------------------------

    def _query_frames(self, v):
        self.system.check_point(v)
        k = self.system.k
        width = max(len(self.decomps[i].paths[v[i]]) for i in range(k))
        anc_c = np.full((k, width), -1, dtype=np.int64)
        anc_d = np.zeros((k, width), dtype=np.int64)
        anc_u = np.full((k, width), -1, dtype=np.int64)
        lens = np.zeros(k, dtype=np.int64)
        for i, x in enumerate(v):
            path = self.decomps[i].paths[x]
            lens[i] = len(path)
            for t, (c, d) in enumerate(path):
                anc_c[i, t] = c
                anc_d[i, t] = d
                # exclusion only applies when the cell is a proper ancestor
                anc_u[i, t] = path[t - 1][0] if t >= 1 else -1
        return anc_c, anc_d, anc_u, lens

    def query(self, v):
        """(value, witness point) of the combined-distance maximum."""
        v = tuple(int(x) for x in v)
        anc_c, anc_d, anc_u, lens = self._query_frames(v)
        if self._cell_map is None:
            if self.mode == "sum":
                val, row = _kernels.sum_query_full(
                    anc_c, anc_d, anc_u, lens, self.strides,
                    self.cell_keys, self.cell_lo, self.cell_hi,
                    self.evens, self.fvals,
                )
            else:
                val, row = _kernels.min_query_full(
                    anc_c, anc_d, anc_u, lens, self.strides,
                    self.cell_keys, self.cell_lo, self.cell_hi,
                    self.evens, self.fvals, self.deltas,
                )
        else:
            val, row = self._query_tuples(anc_c, anc_d, anc_u, lens)
        if row < 0:
            raise AssertionError("query matched no cell; S was nonempty")
        return int(val), self.points[int(self.sidx[row])]

    def _query_tuples(self, anc_c, anc_d, anc_u, lens):
        """Dict-keyed fallback when cell keys overflow 64-bit packing."""
        k = self.system.k
        best_val, best_row = -1, -1
        for combo in product(*(range(int(lens[i])) for i in range(k))):
            cell = tuple(int(anc_c[i, t]) for i, t in enumerate(combo))
            add = sum(int(anc_d[i, t]) for i, t in enumerate(combo))
            forbid = np.array(
                [anc_u[i, t] for i, t in enumerate(combo)], dtype=np.int32
            )
            if self.mode == "sum":
                span = self._cell_map.get(cell)
                if span is None:
                    continue
                row = _kernels.cell_scan_sum(
                    self.evens, span[0], span[1], forbid
                )
                if row >= 0:
                    val = int(self.fvals[row]) + add
                    if val > best_val:
                        best_val, best_row = val, row
            else:
                dq = [int(anc_d[i, t]) for i, t in enumerate(combo)]
                for i in range(k):
                    span = self._cell_map.get(cell + (i,))
                    if span is None:
                        continue
                    bounds = np.array(
                        [dq[j] - dq[i] for j in range(k) if j != i],
                        dtype=np.int32,
                    )
                    row = _kernels.cell_scan_min(
                        self.evens, self.deltas, span[0], span[1],
                        forbid, bounds,
                    )
                    if row >= 0:
                        val = int(self.fvals[row]) + dq[i]
                        if val > best_val:
                            best_val, best_row = val, row
        return best_val, best_row

    # -- the literal flat range-tree formulation ------------------------

    def as_range_tree(self) -> RangeTree:
        """The stored points as one flat range tree.

        Sum mode gives 2k dimensions (interleaved ancestor / step-down
        neighbour); min mode appends the coordinate slot and the k-1 delta
        coordinates for 3k in total.  Used as a reference route for the
        engineered cell layout.
        """
        k = self.system.k
        dim = 2 * k if self.mode == "sum" else 3 * k
        pts = []
        for row in range(self.point_count):
            coords = []
            for i in range(k):
                coords.append(int(self._cells_sorted[row, i]))
                coords.append(int(self.evens[row, i]))
            if self.mode == "min":
                coords.append(int(self.which[row]))
                coords.extend(int(x) for x in self.deltas[row])
                while len(coords) < dim:  # k == 1 has no deltas
                    coords.append(0)
            pts.append(
                ValuedPoint(tuple(coords), float(self.fvals[row]), row)
            )
        return RangeTree(pts, dimension=dim)

    def query_via_range_tree(self, v, rt: RangeTree | None = None):
        """Reference query through explicit constrained range queries."""
        v = tuple(int(x) for x in v)
        anc_c, anc_d, anc_u, lens = self._query_frames(v)
        if rt is None:
            rt = self.as_range_tree()
        k = self.system.k
        best = None
        for combo in product(*(range(int(lens[i])) for i in range(k))):
            dq = [int(anc_d[i, t]) for i, t in enumerate(combo)]
            base_cons = []
            for i, t in enumerate(combo):
                base_cons.append(Eq(int(anc_c[i, t])))
                u = int(anc_u[i, t])
                base_cons.append(NotEq(u) if u >= 0 else ANY)
            if self.mode == "sum":
                res = rt.query_constrained(tuple(base_cons))
                if res is not None:
                    val = int(res[0]) + sum(dq)
                    if best is None or val > best[0]:
                        best = (val, int(res[1]))
            else:
                for i in range(k):
                    cons = list(base_cons)
                    cons.append(Eq(i))
                    cons.extend(
                        AtMost(dq[j] - dq[i]) for j in range(k) if j != i
                    )
                    while len(cons) < 3 * k:
                        cons.append(ANY)
                    res = rt.query_constrained(tuple(cons))
                    if res is not None:
                        val = int(res[0]) + dq[i]
                        if best is None or val > best[0]:
                            best = (val, int(res[1]))
        if best is None:
            raise AssertionError("query matched no cell; S was nonempty")
        return best[0], self.points[int(self.sidx[best[1]])]


class SumEccIndex(_CellIndex):
    def __init__(self, system: TreeSystem, points):
        super().__init__(system, points, "sum")


class MinEccIndex(_CellIndex):
    def __init__(self, system: TreeSystem, points):
        super().__init__(system, points, "min")


def build_sum_index(system: TreeSystem, points) -> SumEccIndex:
    return SumEccIndex(system, points)


def build_min_index(system: TreeSystem, points) -> MinEccIndex:
    return MinEccIndex(system, points)


class MaxEccIndex:
    """Per-tree pruning: O(N + k|S|) build, O(k) query."""

    def __init__(self, system: TreeSystem, points):
        self.system = system
        self.points = _normalize_points(system, points)
        self.core_masks = []
        self.core_ecc = []
        self.gates = []
        self.gate_dist = []
        for i, tree in enumerate(system.trees):
            marked = np.zeros(tree.node_count, dtype=bool)
            for p in self.points:
                marked[p[i]] = True
            core, gate, gdist = _prune_to_marked(tree, marked)
            self.core_masks.append(core)
            self.gates.append(gate)
            self.gate_dist.append(gdist)
            self.core_ecc.append(_core_eccentricities(tree, core))

    def query(self, v) -> int:
        self.system.check_point(v)
        best = 0
        for i, x in enumerate(v):
            if self.core_masks[i][x]:
                cand = int(self.core_ecc[i][x])
            else:
                g = int(self.gates[i][x])
                cand = int(self.gate_dist[i][x]) + int(self.core_ecc[i][g])
            if cand > best:
                best = cand
        return best


def build_max_index(system: TreeSystem, points) -> MaxEccIndex:
    return MaxEccIndex(system, points)


def _prune_to_marked(tree: Tree, marked):
    """Iteratively strip unmarked leaves; gate the outside back to the core."""
    n = tree.node_count
    degree = np.array([len(a) for a in tree.adjacency], dtype=np.int64)
    core = np.ones(n, dtype=bool)
    stack = [v for v in range(n) if degree[v] <= 1 and not marked[v]]
    while stack:
        v = stack.pop()
        if not core[v] or marked[v] or degree[v] > 1:
            continue
        core[v] = False
        for w in tree.adjacency[v]:
            if core[w]:
                degree[w] -= 1
                if degree[w] <= 1 and not marked[w]:
                    stack.append(w)
    indptr, indices = tree.csr
    sources = np.flatnonzero(core).astype(np.int32)
    dist, label, ok = _bfs_labeled(
        indptr, indices, sources, sources,
        np.ones(n, dtype=bool),
    )
    assert ok, "gates in a tree are unique by construction"
    return core, label, dist


def _core_eccentricities(tree: Tree, core):
    """Eccentricities within the pruned subtree, via its diametral pair."""
    indptr, indices = tree.csr
    nodes = np.flatnonzero(core)
    start = np.int32(nodes[0])
    d0, _, _ = _bfs_labeled(indptr, indices, [start], [0], core)
    a = nodes[int(np.argmax(d0[nodes]))]
    da, _, _ = _bfs_labeled(indptr, indices, [np.int32(a)], [0], core)
    b = nodes[int(np.argmax(da[nodes]))]
    db, _, _ = _bfs_labeled(indptr, indices, [np.int32(b)], [0], core)
    ecc = np.maximum(da, db)
    ecc[~core] = -1
    return ecc
