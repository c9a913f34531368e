"""Centroid and centroid decomposition of a tree.

The decomposition records, for every node v, its ancestor path in the
recursion tree together with original-tree distances to each ancestor.  Those
paths drive the cell enumeration of the system-eccentricity indexes.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .tree import Tree


def centroid(tree: Tree) -> int:
    """A node whose removal leaves components of size <= floor(n/2)."""
    sub = _component_centroid(
        tree.adjacency, 0, np.ones(tree.node_count, dtype=bool)
    )
    return sub


def _component_centroid(adjacency, start, alive) -> int:
    """Centroid of the alive component containing ``start``."""
    order = [start]
    parent = {start: -1}
    for v in order:
        for w in adjacency[v]:
            if alive[w] and w not in parent:
                parent[w] = v
                order.append(w)
    total = len(order)
    size = {v: 1 for v in order}
    for v in reversed(order[1:]):
        size[parent[v]] += size[v]
    # walk from the root into any child subtree still holding a majority;
    # the side we come from never exceeds half, so the walk only descends
    v = start
    while True:
        nxt = None
        for w in adjacency[v]:
            if alive[w] and w != parent[v] and size[w] * 2 > total:
                nxt = w
                break
        if nxt is None:
            return v
        v = nxt


@dataclass
class CentroidIndex:
    """Ancestor paths of a centroid decomposition.

    ``paths[v]`` lists (ancestor, distance-in-original-tree) pairs deepest
    level first: paths[v][0] == (v, 0) and the last entry is the global root
    centroid.  For any two nodes their deepest common entry c satisfies
    d(s, v) = d(s, c) + d(c, v).
    """

    tree: Tree
    paths: list[list[tuple[int, int]]]
    depth: int

    def packed(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(anc_node, anc_dist, anc_len) padded arrays for the kernels."""
        n = self.tree.node_count
        width = max(len(p) for p in self.paths)
        anc_node = np.full((n, width), -1, dtype=np.int32)
        anc_dist = np.zeros((n, width), dtype=np.int32)
        anc_len = np.empty(n, dtype=np.int32)
        for v, path in enumerate(self.paths):
            anc_len[v] = len(path)
            for t, (c, d) in enumerate(path):
                anc_node[v, t] = c
                anc_dist[v, t] = d
        return anc_node, anc_dist, anc_len


def centroid_decomposition(tree: Tree) -> CentroidIndex:
    """Build the recursion tree of centroids with per-node ancestor paths."""
    n = tree.node_count
    adjacency = tree.adjacency
    alive = np.ones(n, dtype=bool)
    paths: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    stack = [(0, 0)]  # (component representative, recursion depth)
    max_depth = 0
    bound = n.bit_length()  # floor(log2 n) + 1
    while stack:
        start, depth = stack.pop()
        c = _component_centroid(adjacency, start, alive)
        # BFS from c inside the component: every member gains ancestor c
        queue = deque([c])
        dist = {c: 0}
        while queue:
            v = queue.popleft()
            paths[v].append((c, dist[v]))
            for w in adjacency[v]:
                if alive[w] and w not in dist:
                    dist[w] = dist[v] + 1
                    queue.append(w)
        max_depth = max(max_depth, depth + 1)
        if depth + 1 > bound:
            raise AssertionError("centroid recursion exceeded log bound")
        alive[c] = False
        for w in adjacency[c]:
            if alive[w]:
                stack.append((w, depth + 1))
    for path in paths:
        path.reverse()
    return CentroidIndex(tree, paths, max_depth)
