"""Shared fixtures and small generators for the test suite."""

from __future__ import annotations

import numpy as np
import pytest

from treemetrics.tree import Tree, build_tree

# The 17-node worked example tree, edges in drawing order.  The order matters
# only to the heavy-path tie-breaks (first child in adjacency order wins).
FIG_TREE_EDGES = [
    (0, 1), (1, 2), (2, 3), (3, 7), (7, 9), (3, 4), (4, 6), (4, 5),
    (7, 8), (2, 10), (1, 11), (11, 13), (11, 12), (11, 14), (1, 15), (15, 16),
]

# Expected heavy-path decomposition of the example tree rooted at 0 with
# alpha == 0, checked cell by cell: node -> (path, offset, child paths, h, hr)
FIG_NODE_TABLE = {
    0: (0, 0, [], 5, 0),
    1: (0, 1, [5, 8], 4, 2),
    2: (0, 2, [4], 3, 1),
    3: (0, 3, [1], 2, 2),
    4: (1, 0, [2], 1, 1),
    5: (2, 0, [], 0, 0),
    6: (1, 1, [], 0, 0),
    7: (0, 4, [3], 1, 1),
    8: (3, 0, [], 0, 0),
    9: (0, 5, [], 0, 0),
    10: (4, 0, [], 0, 0),
    11: (5, 0, [6, 7], 1, 1),
    12: (6, 0, [], 0, 0),
    13: (5, 1, [], 0, 0),
    14: (7, 0, [], 0, 0),
    15: (8, 0, [], 1, 0),
    16: (8, 1, [], 0, 0),
}

# path -> (node list root-first, root, h)
FIG_PATH_TABLE = {
    0: ([0, 1, 2, 3, 7, 9], 0, 5),
    1: ([4, 6], 4, 1),
    2: ([5], 5, 0),
    3: ([8], 8, 0),
    4: ([10], 10, 0),
    5: ([11, 13], 11, 1),
    6: ([12], 12, 0),
    7: ([14], 14, 0),
    8: ([15, 16], 15, 1),
}


@pytest.fixture
def fig_tree() -> Tree:
    return build_tree(FIG_TREE_EDGES)


def random_tree(rng: np.random.Generator, n: int) -> Tree:
    """Uniform random attachment tree on n nodes."""
    edges = [(int(rng.integers(0, i)), i) for i in range(1, n)]
    return build_tree(edges)


def path_tree(n: int) -> Tree:
    return build_tree([(i, i + 1) for i in range(n - 1)])


def star_tree(n: int) -> Tree:
    return build_tree([(0, i) for i in range(1, n)])


def dyadic(rng: np.random.Generator, lo: float, hi: float, size=None):
    """Random multiples of 1/8 in [lo, hi]: float sums stay exact."""
    ticks = rng.integers(int(lo * 8), int(hi * 8) + 1, size=size)
    return ticks / 8.0


def bfs_dist_oracle(tree: Tree, src: int) -> list[int]:
    """Plain dictionary BFS, independent of the library kernels."""
    from collections import deque

    dist = {src: 0}
    dq = deque([src])
    while dq:
        v = dq.popleft()
        for w in tree.adjacency[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                dq.append(w)
    return [dist[v] for v in range(tree.node_count)]
