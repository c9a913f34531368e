from __future__ import annotations

import numpy as np
import pytest

from treemetrics.extreal import NEG_INF
from treemetrics.heavy_path import (
    heavy_path_decomposition,
    range_argmax_minus,
    range_argmax_plus,
)
from treemetrics.tree import bfs_distances, build_tree

from conftest import (
    FIG_NODE_TABLE,
    FIG_PATH_TABLE,
    FIG_TREE_EDGES,
    dyadic,
    path_tree,
    random_tree,
)


def build_fig_index():
    t = build_tree(FIG_TREE_EDGES)
    return heavy_path_decomposition(t, 0, np.zeros(17))


def test_worked_example_node_table():
    idx = build_fig_index()
    for v, (pid, off, kids, h, hr) in FIG_NODE_TABLE.items():
        assert idx.path_id[v] == pid, f"path of node {v}"
        assert idx.offset[v] == off, f"offset of node {v}"
        assert idx.child_paths[v] == kids, f"child paths of node {v}"
        assert idx.h[v] == h, f"h of node {v}"
        assert idx.hr[v] == hr, f"hr of node {v}"


def test_worked_example_path_table():
    idx = build_fig_index()
    assert idx.path_count == len(FIG_PATH_TABLE)
    for pid, (nodes, root, h) in FIG_PATH_TABLE.items():
        assert idx.paths[pid] == nodes
        assert idx.path_root[pid] == root
        assert idx.path_h[pid] == h


def test_worked_example_fathers():
    idx = build_fig_index()
    assert idx.path_father[0] == -1
    assert idx.path_father[1] == 3
    assert idx.path_father[5] == 1
    assert idx.path_parent[1] == 0
    assert idx.path_parent[2] == 1
    assert idx.top_path == 0


def test_path_tree_is_one_heavy_path():
    idx = heavy_path_decomposition(path_tree(4), 0, np.zeros(4))
    assert idx.path_count == 1
    assert idx.paths[0] == [0, 1, 2, 3]
    for i in range(4):
        assert idx.offset[i] == i
        assert idx.h[i] == 3 - i
        assert idx.hr[i] == 0


def brute_heights(tree, root, alpha):
    """Subtree maxima by scanning every node's subtree explicitly."""
    from treemetrics.tree import rooted_order

    n = tree.node_count
    order, parent = rooted_order(tree, root)
    members = [[v] for v in range(n)]
    for v in order[:0:-1]:
        members[parent[v]].extend(members[v])
    h = np.full(n, NEG_INF)
    for v in range(n):
        d = bfs_distances(tree, v)
        h[v] = max(d[x] + alpha[x] for x in members[v])
    return h, members


def test_heights_match_subtree_scan():
    rng = np.random.default_rng(17)
    t = random_tree(rng, 120)
    alpha = dyadic(rng, -5, 5, size=120)
    idx = heavy_path_decomposition(t, 0, alpha)
    h_want, members = brute_heights(t, 0, alpha)
    assert np.array_equal(idx.h, h_want)
    # hr: same scan, restricted to the subtree minus the heavy branch
    for v in range(120):
        heavy = idx.heavy[v]
        keep = set(members[v])
        if heavy >= 0:
            keep -= set(members[heavy])
        d = bfs_distances(t, v)
        want = max(d[x] + alpha[x] for x in keep)
        assert idx.hr[v] == want


def test_heavy_child_maximal_and_depth_bound():
    rng = np.random.default_rng(19)
    t = random_tree(rng, 2000)
    idx = heavy_path_decomposition(t, 0, np.zeros(2000))
    for v in range(2000):
        kids = [w for w in t.adjacency[v] if w != idx.parent[v]]
        if kids:
            assert idx.size[idx.heavy[v]] == max(idx.size[w] for w in kids)
    assert int(idx.path_depth.max()) <= 2000 .bit_length()
    # every node on exactly one path
    seen = set()
    for nodes in idx.paths:
        seen.update(nodes)
    assert len(seen) == 2000


def test_child_path_lists_sorted():
    rng = np.random.default_rng(29)
    t = random_tree(rng, 300)
    alpha = dyadic(rng, -3, 3, size=300)
    idx = heavy_path_decomposition(t, 0, alpha)
    for v in range(300):
        hs = [idx.path_h[p] for p in idx.child_paths[v]]
        assert hs == sorted(hs, reverse=True)
        for p in idx.child_paths[v]:
            assert idx.path_father[p] == v
    for v in range(300):
        assert idx.h[v] >= idx.hr[v] >= idx.alpha[v]


def test_minus_infinity_alpha():
    alpha = np.array([NEG_INF, 0.0, NEG_INF])
    idx = heavy_path_decomposition(path_tree(3), 0, alpha)
    assert idx.h[2] == NEG_INF
    assert idx.h[1] == 0.0
    assert idx.h[0] == 1.0
    assert idx.hr[0] == NEG_INF


def test_range_argmax_worked_example():
    # hr over the top path is (0, 2, 1, 2, 1, 0); minus-sequence
    # (0, 2-1, 1-2, 2-3, 1-4, 0-5) peaks at offset 1 with value 1
    idx = build_fig_index()
    assert range_argmax_minus(idx, 0, 0, 5) == (1, 1.0)
    # plus-sequence (0, 3, 3, 5, 5, 5): any of offsets 3..5 attains 5
    off, val = range_argmax_plus(idx, 0, 0, 5)
    assert val == 5.0 and off in (3, 4, 5)


def test_range_argmax_empty_and_errors():
    idx = build_fig_index()
    assert range_argmax_minus(idx, 0, 3, 2) is None
    with pytest.raises(IndexError):
        range_argmax_minus(idx, 0, 0, 6)
    with pytest.raises(IndexError):
        range_argmax_plus(idx, 1, -1, 0)


def test_range_argmax_matches_linear_scan():
    rng = np.random.default_rng(31)
    t = random_tree(rng, 400)
    alpha = dyadic(rng, -4, 4, size=400)
    idx = heavy_path_decomposition(t, 0, alpha)
    for pid in range(idx.path_count):
        nodes = idx.paths[pid]
        minus = [idx.hr[v] - j for j, v in enumerate(nodes)]
        plus = [idx.hr[v] + j for j, v in enumerate(nodes)]
        length = len(nodes)
        for _ in range(5):
            lo = int(rng.integers(0, length))
            hi = int(rng.integers(lo, length))
            off, val = range_argmax_minus(idx, pid, lo, hi)
            assert val == max(minus[lo : hi + 1])
            assert minus[off] == val
            off, val = range_argmax_plus(idx, pid, lo, hi)
            assert val == max(plus[lo : hi + 1])
            assert plus[off] == val
