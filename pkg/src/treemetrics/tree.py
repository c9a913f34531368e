"""Trees over integer node ids with unit edge weights.

Adjacency lists keep edge-insertion order; that order is also the
deterministic tie-break used by the heavy-path decomposition, so two runs on
the same edge list always produce identical structures.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._kernels import bfs as _bfs


class TreeError(ValueError):
    """The given edges do not form a valid tree."""


@dataclass
class Tree:
    node_count: int
    adjacency: list[list[int]]
    _csr: tuple[np.ndarray, np.ndarray] | None = field(
        default=None, repr=False, compare=False
    )

    def __post_init__(self):
        if self.node_count <= 0:
            raise TreeError("tree must have at least one node")

    @property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        if self._csr is None:
            indptr = np.zeros(self.node_count + 1, dtype=np.int32)
            for v, nbrs in enumerate(self.adjacency):
                indptr[v + 1] = indptr[v] + len(nbrs)
            indices = np.empty(indptr[-1], dtype=np.int32)
            pos = 0
            for nbrs in self.adjacency:
                indices[pos : pos + len(nbrs)] = nbrs
                pos += len(nbrs)
            self._csr = (indptr, indices)
        return self._csr

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def edges(self):
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if u < v:
                    yield (u, v)


def build_tree(edges, node_count: int | None = None) -> Tree:
    """Validate an edge list and return the tree it spans.

    Node ids must be 0..n-1 with n = len(edges) + 1 (or the explicit
    ``node_count``).  Rejects out-of-range ids, self-loops, duplicate edges,
    wrong edge counts, and disconnected inputs, naming the violation.
    """
    edges = list(edges)
    n = node_count if node_count is not None else len(edges) + 1
    if n <= 0:
        raise TreeError("tree must have at least one node")
    if len(edges) != n - 1:
        raise TreeError(
            f"expected {n - 1} edges for {n} nodes, got {len(edges)}"
        )
    adjacency: list[list[int]] = [[] for _ in range(n)]
    seen = set()
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise TreeError(f"node id out of range in edge ({u}, {v}); n={n}")
        if u == v:
            raise TreeError(f"self-loop at node {u}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise TreeError(f"duplicate edge ({key[0]}, {key[1]})")
        seen.add(key)
        adjacency[u].append(v)
        adjacency[v].append(u)
    tree = Tree(n, adjacency)
    dist = bfs_distances(tree, 0)
    if (dist < 0).any():
        bad = int(np.argmax(dist < 0))
        # with exactly n-1 distinct edges a disconnected graph is also cyclic
        raise TreeError(
            f"edges do not form a tree: node {bad} unreachable from 0 "
            "(disconnected, hence some component contains a cycle)"
        )
    return tree


def bfs_distances(tree: Tree, root: int) -> np.ndarray:
    """Unit-weight distances from ``root`` to every node."""
    if not 0 <= root < tree.node_count:
        raise IndexError(f"root {root} out of range")
    indptr, indices = tree.csr
    return _bfs(indptr, indices, root)


def rooted_order(tree: Tree, root: int) -> tuple[np.ndarray, np.ndarray]:
    """Preorder (children in adjacency order) and parent array for a root."""
    n = tree.node_count
    parent = np.full(n, -1, dtype=np.int32)
    order = np.empty(n, dtype=np.int32)
    # iterative DFS; pushing reversed children keeps adjacency order in the
    # preorder sequence
    stack = [root]
    parent[root] = -1
    seen = np.zeros(n, dtype=bool)
    seen[root] = True
    pos = 0
    while stack:
        v = stack.pop()
        order[pos] = v
        pos += 1
        for w in reversed(tree.adjacency[v]):
            if not seen[w]:
                seen[w] = True
                parent[w] = v
                stack.append(w)
    if pos != n:
        raise TreeError("tree is disconnected")
    return order, parent


def tree_eccentricities(tree: Tree) -> np.ndarray:
    """Eccentricity of every node.

    Farthest points in a tree are diameter endpoints, so two extra BFS rows
    suffice: e(v) = max(d(v, a), d(v, b)) for a diametral pair (a, b).
    """
    indptr, indices = tree.csr
    d0 = _bfs(indptr, indices, 0)
    a = int(np.argmax(d0))
    da = _bfs(indptr, indices, a)
    b = int(np.argmax(da))
    db = _bfs(indptr, indices, b)
    return np.maximum(da, db)
