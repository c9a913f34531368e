from __future__ import annotations

from itertools import product

import numpy as np
import pytest

from treemetrics.ecc_index import (
    MaxEccIndex,
    MinEccIndex,
    SumEccIndex,
    TreeSystem,
    build_max_index,
    build_min_index,
    build_sum_index,
)
from treemetrics.oracle import brute_odot
from treemetrics.tree import build_tree

from conftest import path_tree, random_tree, star_tree


def random_system(rng, k_max=3, n_max=60, s_max=40):
    k = int(rng.integers(1, k_max + 1))
    trees = [random_tree(rng, int(rng.integers(1, n_max))) for _ in range(k)]
    trees = [t if t.node_count > 1 else build_tree([]) for t in trees]
    sys = TreeSystem(trees)
    s_count = int(rng.integers(1, s_max))
    points = [
        tuple(int(rng.integers(0, t.node_count)) for t in trees)
        for _ in range(s_count)
    ]
    return sys, points


def random_query(rng, sys):
    return tuple(int(rng.integers(0, t.node_count)) for t in sys.trees)


def test_sum_k1_path():
    sys = TreeSystem([path_tree(3)])
    idx = build_sum_index(sys, [(0,), (2,)])
    val, wit = idx.query((1,))
    assert val == 1
    assert wit in [(0,), (2,)]


def test_sum_two_paths_corner():
    sys = TreeSystem([path_tree(3), path_tree(3)])
    idx = build_sum_index(sys, [(0, 0), (2, 2)])
    assert idx.query((0, 0))[0] == 4
    assert idx.query((0, 0))[1] == (2, 2)


def test_sum_singleton_trees():
    sys = TreeSystem([build_tree([]), build_tree([])])
    idx = build_sum_index(sys, [(0, 0)])
    assert idx.point_count == 1
    assert idx.query((0, 0)) == (0, (0, 0))


def test_singleton_s_gives_plain_distance():
    rng = np.random.default_rng(42)
    sys, _ = random_system(rng, k_max=3)
    s = random_query(rng, sys)
    for builder, op in [
        (build_sum_index, "sum"),
        (build_min_index, "min"),
    ]:
        idx = builder(sys, [s])
        for _ in range(10):
            v = random_query(rng, sys)
            val, wit = idx.query(v)
            assert wit == s
            assert val == brute_odot(sys, [s], v, op)


def test_min_diagonal_example():
    t = path_tree(5)
    sys = TreeSystem([t, t])
    diag = [(i, i) for i in range(5)]
    idx = build_min_index(sys, diag)
    val, wit = idx.query((0, 4))
    assert val == 2
    assert wit == (2, 2)


def test_max_path_ends():
    sys = TreeSystem([path_tree(5)])
    idx = build_max_index(sys, [(0,), (4,)])
    assert idx.query((2,)) == 2


def test_max_star_prunes_to_single_leaf():
    sys = TreeSystem([star_tree(6)])
    idx = build_max_index(sys, [(1,)])
    assert idx.core_masks[0].sum() == 1
    assert idx.query((3,)) == 2


def test_max_core_leaves_are_projections():
    rng = np.random.default_rng(50)
    for _ in range(20):
        sys, points = random_system(rng, k_max=4)
        idx = build_max_index(sys, points)
        for i, t in enumerate(sys.trees):
            core = idx.core_masks[i]
            proj = {p[i] for p in points}
            nodes = np.flatnonzero(core)
            assert proj <= set(nodes.tolist())
            for v in nodes:
                deg = sum(1 for w in t.adjacency[v] if core[w])
                if deg <= 1 and len(nodes) > 1:
                    assert v in proj


def test_point_count_bound():
    rng = np.random.default_rng(60)
    for _ in range(10):
        sys, points = random_system(rng, k_max=3, n_max=80)
        idx = build_sum_index(sys, points)
        logs = (sys.total_nodes).bit_length()
        assert idx.point_count <= len(points) * logs ** sys.k


def test_partition_property():
    """Each s matches exactly one cell of any query's enumeration."""
    rng = np.random.default_rng(61)
    sys, points = random_system(rng, k_max=3, n_max=30, s_max=20)
    idx = build_sum_index(sys, points)
    k = sys.k
    for _ in range(5):
        v = random_query(rng, sys)
        anc_c, anc_d, anc_u, lens = idx._query_frames(v)
        hits = {sid: 0 for sid in range(len(idx.points))}
        for combo in product(*(range(int(lens[i])) for i in range(k))):
            cell = tuple(int(anc_c[i, t]) for i, t in enumerate(combo))
            forbid = [int(anc_u[i, t]) for i, t in enumerate(combo)]
            for row in range(idx.point_count):
                if tuple(idx._cells_sorted[row]) != cell:
                    continue
                if any(
                    u >= 0 and idx.evens[row, j] == u
                    for j, u in enumerate(forbid)
                ):
                    continue
                hits[int(idx.sidx[row])] += 1
        assert all(c == 1 for c in hits.values())


@pytest.mark.parametrize("op,builder", [
    ("sum", build_sum_index),
    ("min", build_min_index),
])
def test_random_oracle_agreement(op, builder):
    rng = np.random.default_rng(hash(op) % 2**32)
    for _ in range(40):
        sys, points = random_system(rng)
        idx = builder(sys, points)
        for _ in range(8):
            v = random_query(rng, sys)
            val, wit = idx.query(v)
            want = brute_odot(sys, points, v, op)
            assert val == want
            # the witness attains the value
            assert brute_odot(sys, [wit], v, op) == val
            assert wit in idx.points


def test_max_random_oracle_agreement():
    rng = np.random.default_rng(70)
    for _ in range(40):
        sys, points = random_system(rng, k_max=4)
        idx = build_max_index(sys, points)
        for _ in range(8):
            v = random_query(rng, sys)
            assert idx.query(v) == brute_odot(sys, points, v, "max")


def test_exhaustive_small_systems():
    rng = np.random.default_rng(80)
    for _ in range(10):
        sys, points = random_system(rng, k_max=2, n_max=12, s_max=10)
        sum_idx = build_sum_index(sys, points)
        min_idx = build_min_index(sys, points)
        max_idx = build_max_index(sys, points)
        for v in product(*(range(t.node_count) for t in sys.trees)):
            assert sum_idx.query(v)[0] == brute_odot(sys, points, v, "sum")
            assert min_idx.query(v)[0] == brute_odot(sys, points, v, "min")
            assert max_idx.query(v) == brute_odot(sys, points, v, "max")


def test_range_tree_route_matches_fast_path():
    rng = np.random.default_rng(90)
    for _ in range(6):
        sys, points = random_system(rng, k_max=2, n_max=25, s_max=12)
        for builder in (build_sum_index, build_min_index):
            idx = builder(sys, points)
            rt = idx.as_range_tree()
            for _ in range(6):
                v = random_query(rng, sys)
                assert idx.query(v)[0] == idx.query_via_range_tree(v, rt)[0]


def test_tuple_key_fallback_path():
    """The dict-keyed route (used when packed keys would overflow)."""
    rng = np.random.default_rng(91)
    for builder, op in [(build_sum_index, "sum"), (build_min_index, "min")]:
        sys, points = random_system(rng, k_max=3, n_max=30, s_max=15)
        idx = builder(sys, points)
        idx._force_tuple_path()
        assert idx._cell_map is not None
        for _ in range(10):
            v = random_query(rng, sys)
            assert idx.query(v)[0] == brute_odot(sys, points, v, op)


def test_validation_errors():
    sys = TreeSystem([path_tree(3)])
    with pytest.raises(ValueError, match="nonempty"):
        build_sum_index(sys, [])
    with pytest.raises(ValueError, match="out of range"):
        build_sum_index(sys, [(7,)])
    idx = build_sum_index(sys, [(0,)])
    with pytest.raises(ValueError, match="dimensional"):
        idx.query((0, 1))
