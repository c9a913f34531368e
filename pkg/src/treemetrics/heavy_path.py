"""Heavy-path decomposition with height aggregates and range structures.

For a tree rooted anywhere and a per-node weight ``alpha`` (minus infinity
allowed), this builds in O(n log n):

- the partition of nodes into heavy paths, each stored root-first,
- per node: its path, the offset along it, and the heights
  h(v)  = max over the subtree of v of (distance + alpha),
  hr(v) = likewise but excluding the heavy branch,
- per node: child paths sorted by nonincreasing path height,
- per path: two range-argmax structures over (hr - offset) and
  (hr + offset), queried in O(1).

Heavy child ties go to the first child in adjacency order; heavy paths are
numbered by ascending root id.  Both choices are arbitrary but fixed so runs
are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import subtree_aggregates
from .rmq import RangeArgmax
from .tree import Tree, rooted_order


@dataclass
class HeavyPathIndex:
    tree: Tree
    root: int
    alpha: np.ndarray          # float64, -inf allowed
    parent: np.ndarray         # tree parent, -1 at root
    heavy: np.ndarray          # heavy child, -1 at leaves
    size: np.ndarray           # subtree sizes
    h: np.ndarray              # float64 aggregates
    hr: np.ndarray
    path_id: np.ndarray        # path of each node
    offset: np.ndarray         # distance to the path root
    paths: list[list[int]]     # node lists, root first
    path_root: np.ndarray      # first node of each path
    path_father: np.ndarray    # tree parent of the path root, -1 for top
    path_parent: np.ndarray    # containing path of the father, -1 for top
    path_h: np.ndarray         # h at the path root
    path_depth: np.ndarray     # #paths on the chain up to the top path
    top_path: int
    child_paths: list[list[int]]  # per node, sorted by (-path_h, path id)
    _minus: RangeArgmax        # over concat(hr - offset)
    _plus: RangeArgmax         # over concat(hr + offset)
    path_start: np.ndarray     # slice of each path in the concat arrays

    @property
    def path_count(self) -> int:
        return len(self.paths)

    def path_len(self, p: int) -> int:
        return len(self.paths[p])

    def node_at(self, p: int, off: int) -> int:
        return self.paths[p][off]


def heavy_path_decomposition(tree: Tree, root: int, alpha) -> HeavyPathIndex:
    n = tree.node_count
    alpha = np.asarray(alpha, dtype=np.float64)
    if alpha.shape != (n,):
        raise ValueError("alpha must have one value per node")
    if np.isposinf(alpha).any() or np.isnan(alpha).any():
        raise ValueError("alpha must be finite or -inf")
    order, parent = rooted_order(tree, root)
    size, heavy, h, hr = subtree_aggregates(order, parent, alpha)

    # carve out the heavy paths; tops are the root and every non-heavy child
    path_of = np.full(n, -1, dtype=np.int32)
    tops = [v for v in range(n) if v == root or heavy[parent[v]] != v]
    tops.sort()
    paths: list[list[int]] = []
    for top in tops:
        nodes = []
        v = top
        while v != -1:
            nodes.append(v)
            v = heavy[v]
        paths.append(nodes)
    offset = np.empty(n, dtype=np.int32)
    for pid, nodes in enumerate(paths):
        for off, v in enumerate(nodes):
            path_of[v] = pid
            offset[v] = off

    path_root = np.array([nodes[0] for nodes in paths], dtype=np.int32)
    path_father = np.array(
        [parent[nodes[0]] for nodes in paths], dtype=np.int32
    )
    path_parent = np.where(path_father >= 0, path_of[path_father], -1).astype(
        np.int32
    )
    path_h = h[path_root]
    top_path = int(path_of[root])

    # depth of each path in the contracted tree, and the log bound check
    path_depth = np.zeros(len(paths), dtype=np.int32)
    node_depth = np.zeros(n, dtype=np.int32)
    for v in order[1:]:
        node_depth[v] = node_depth[parent[v]] + 1
    by_depth = sorted(range(len(paths)), key=lambda p: node_depth[path_root[p]])
    for p in by_depth:
        q = path_parent[p]
        path_depth[p] = 1 if q < 0 else path_depth[q] + 1
    if int(path_depth.max()) > n.bit_length():
        raise AssertionError("heavy-path tree exceeded its log depth bound")

    child_paths: list[list[int]] = [[] for _ in range(n)]
    for p in range(len(paths)):
        f = path_father[p]
        if f >= 0:
            child_paths[f].append(p)
    for lst in child_paths:
        lst.sort(key=lambda p: (-path_h[p], p))

    # concatenated (hr -/+ offset) sequences shared by all paths
    path_start = np.zeros(len(paths) + 1, dtype=np.int64)
    for p, nodes in enumerate(paths):
        path_start[p + 1] = path_start[p] + len(nodes)
    concat_nodes = np.concatenate(
        [np.asarray(nodes, dtype=np.int64) for nodes in paths]
    )
    offs = np.concatenate(
        [np.arange(len(nodes), dtype=np.int64) for nodes in paths]
    )
    hr_seq = hr[concat_nodes]
    minus = RangeArgmax(hr_seq - offs)
    plus = RangeArgmax(hr_seq + offs)

    return HeavyPathIndex(
        tree=tree,
        root=root,
        alpha=alpha,
        parent=parent,
        heavy=heavy,
        size=size,
        h=h,
        hr=hr,
        path_id=path_of,
        offset=offset,
        paths=paths,
        path_root=path_root,
        path_father=path_father,
        path_parent=path_parent,
        path_h=path_h,
        path_depth=path_depth,
        top_path=top_path,
        child_paths=child_paths,
        _minus=minus,
        _plus=plus,
        path_start=path_start,
    )


def _range_argmax(idx: HeavyPathIndex, table: RangeArgmax, path: int,
                  lo: int, hi: int):
    length = idx.path_len(path)
    if lo < 0 or hi >= length:
        raise IndexError(
            f"offsets [{lo}, {hi}] out of range for path {path} "
            f"of length {length}"
        )
    if lo > hi:
        return None
    base = int(idx.path_start[path])
    pos, val = table.query(base + lo, base + hi)
    return pos - base, val


def range_argmax_minus(idx: HeavyPathIndex, path: int, lo: int, hi: int):
    """Maximizer of hr(v) - offset(v) over path offsets [lo, hi].

    Returns (offset, value), or None when the interval is empty (lo > hi).
    """
    return _range_argmax(idx, idx._minus, path, lo, hi)


def range_argmax_plus(idx: HeavyPathIndex, path: int, lo: int, hi: int):
    """Maximizer of hr(v) + offset(v) over path offsets [lo, hi]."""
    return _range_argmax(idx, idx._plus, path, lo, hi)
