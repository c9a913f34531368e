"""Weighted eccentricity of node subsets in a tree.

After an O(n log n) preprocessing of a tree with node weights ``alpha``,
``query`` evaluates

    max over nodes v of  min over u in U of  (alpha(v) + d(v, u) + beta(u))

in O(|U| log^2 n) for any subset U with weights ``beta``.  With alpha and
beta zero this is the plain eccentricity of U: the distance from U to the
node farthest from it.

The query recurses down the heavy-path tree.  At each level it projects U
onto the current top path, computes for every projection the least weighted
distance M to any member (one downward collection pass plus two sweeps along
the path), and then covers all nodes outside the member-carrying subtrees:
the projections themselves, the best member-free subtree hanging below each
projection (child paths are pre-sorted by height), and the path segments
between consecutive projections via two range-argmax queries split where the
left-through and right-through costs cross.  Member-carrying subtrees are
handled recursively with the outside world folded into a surrogate weight on
the subtree root.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil, floor, inf, isinf

import numpy as np

from .extreal import NEG_INF, POS_INF, combine
from .heavy_path import HeavyPathIndex, heavy_path_decomposition
from .tree import Tree


@dataclass
class SubsetEccIndex:
    hp: HeavyPathIndex

    @property
    def tree(self) -> Tree:
        return self.hp.tree

    @property
    def alpha(self) -> np.ndarray:
        return self.hp.alpha


def preprocess(tree: Tree, alpha, root: int = 0) -> SubsetEccIndex:
    """Build the index for (tree, alpha); the root choice is arbitrary."""
    return SubsetEccIndex(heavy_path_decomposition(tree, root, alpha))


class _Frame:
    """Per-projection accumulators on the current top path."""

    __slots__ = ("proj", "m0", "own_beta", "subtrees")

    def __init__(self):
        self.m0 = POS_INF          # min over members of (dist + beta)
        self.own_beta = POS_INF    # beta of the projection itself, if member
        self.subtrees = {}         # marked child path -> (min dist+beta, members)


def query(index: SubsetEccIndex, nodes, beta, *, check: bool = False) -> float:
    """e(U, beta) for U = ``nodes``; ``beta`` is a sequence aligned with
    ``nodes`` or a mapping from node to weight.

    ``check`` turns on the internal budget assertions (recursion depth and
    per-level member counts), used by the test suite.
    """
    hp = index.hp
    n = hp.tree.node_count
    nodes = list(nodes)
    if not nodes:
        raise ValueError("U must be nonempty")
    if isinstance(beta, dict):
        try:
            pairs = [(u, float(beta[u])) for u in nodes]
        except KeyError as exc:
            raise ValueError(f"beta missing on U member {exc.args[0]}") from None
    else:
        beta = list(beta)
        if len(beta) != len(nodes):
            raise ValueError(
                f"beta has {len(beta)} values for {len(nodes)} members"
            )
        pairs = [(u, float(b)) for u, b in zip(nodes, beta)]
    members: dict[int, float] = {}
    for u, b in pairs:
        if not 0 <= u < n:
            raise ValueError(f"node id {u} out of range")
        if b == NEG_INF or np.isnan(b):
            raise ValueError("beta must be real (or +inf)")
        members[u] = min(b, members.get(u, POS_INF))

    state = _QueryState(hp, check, len(members))
    best = state.run(hp.top_path, members, 0)
    return best


class _QueryState:
    def __init__(self, hp: HeavyPathIndex, check: bool, u_count: int):
        self.hp = hp
        self.check = check
        self.u_count = u_count
        self.level_members: dict[int, int] = {}

    def run(self, path: int, members: dict[int, float], depth: int) -> float:
        hp = self.hp
        if self.check:
            bound = hp.tree.node_count.bit_length()
            assert depth < bound, "recursion deeper than the heavy-path tree"
            total = self.level_members.get(depth, 0) + len(members)
            self.level_members[depth] = total
            assert total <= 2 * self.u_count, "per-level member budget exceeded"

        if all(isinf(b) for b in members.values()):
            # no member binds anywhere below: the value is +inf as soon as
            # some node in the subtree carries a real weight
            top = hp.path_root[path]
            return POS_INF if hp.h[top] > NEG_INF else NEG_INF

        frames: dict[int, _Frame] = {}
        for u, b in members.items():
            proj, dist, entry = self._project(u, path)
            fr = frames.get(proj)
            if fr is None:
                fr = frames[proj] = _Frame()
            cost = dist + b
            if cost < fr.m0:
                fr.m0 = cost
            if entry is None:
                fr.own_beta = min(fr.own_beta, b)
            else:
                sub = fr.subtrees.get(entry)
                if sub is None:
                    fr.subtrees[entry] = [cost, [(u, b)]]
                else:
                    sub[0] = min(sub[0], cost)
                    sub[1].append((u, b))

        offset = hp.offset
        projs = sorted(frames, key=lambda v: offset[v])
        s = len(projs)
        ell = [int(offset[v]) for v in projs]
        m0 = [frames[v].m0 for v in projs]

        # sweep forward and backward along the path
        fwd = list(m0)
        for i in range(1, s):
            c = fwd[i - 1] + (ell[i] - ell[i - 1])
            if c < fwd[i]:
                fwd[i] = c
        bwd = list(m0)
        for i in range(s - 2, -1, -1):
            c = bwd[i + 1] + (ell[i + 1] - ell[i])
            if c < bwd[i]:
                bwd[i] = c
        m = [min(a, b) for a, b in zip(fwd, bwd)]

        best = NEG_INF
        plen = hp.path_len(path)
        alpha = hp.alpha

        for i, v in enumerate(projs):
            # the projection node itself
            cand = combine(float(alpha[v]), m[i])
            if cand > best:
                best = cand
            # best member-free subtree hanging below it
            marked = frames[v].subtrees
            for p in hp.child_paths[v]:
                if p not in marked:
                    cand = combine(float(hp.path_h[p]), 1 + m[i])
                    if cand > best:
                        best = cand
                    break

        # path nodes strictly between consecutive projections (and the
        # member-free subtrees hanging below them, via the hr aggregates)
        for i in range(s - 1):
            lo, hi = ell[i] + 1, ell[i + 1] - 1
            if lo > hi:
                continue
            lim = (m[i + 1] - m[i] + ell[i] + ell[i + 1]) / 2
            left_hi = min(floor(lim), hi)
            if left_hi >= lo:
                cand = self._plus(path, lo, left_hi, m[i] - ell[i])
                if cand > best:
                    best = cand
            right_lo = max(ceil(lim), lo)
            if right_lo <= hi:
                cand = self._minus(path, right_lo, hi, m[i + 1] + ell[i + 1])
                if cand > best:
                    best = cand
        if ell[0] > 0:
            cand = self._minus(path, 0, ell[0] - 1, m[0] + ell[0])
            if cand > best:
                best = cand
        if ell[-1] < plen - 1:
            cand = self._plus(path, ell[-1] + 1, plen - 1, m[-1] - ell[-1])
            if cand > best:
                best = cand

        # member-carrying subtrees: recurse with the outside folded into a
        # surrogate weight on each subtree root
        for i, v in enumerate(projs):
            fr = frames[v]
            if not fr.subtrees:
                continue
            d_eq = fr.own_beta
            d_left = fwd[i - 1] + (ell[i] - ell[i - 1]) if i > 0 else POS_INF
            d_right = (
                bwd[i + 1] + (ell[i + 1] - ell[i]) if i < s - 1 else POS_INF
            )
            ranked = sorted(fr.subtrees.items(), key=lambda kv: kv[1][0])
            best_path = ranked[0][0]
            d_down1 = ranked[0][1][0]
            d_down2 = ranked[1][1][0] if len(ranked) > 1 else POS_INF
            for child_path, (_, subs) in fr.subtrees.items():
                down = d_down2 if child_path == best_path else d_down1
                d_j = 1 + min(d_eq, d_left, d_right, down)
                child_members = {}
                for u, b in subs:
                    child_members[u] = min(b, child_members.get(u, POS_INF))
                root = int(hp.path_root[child_path])
                child_members[root] = min(
                    d_j, child_members.get(root, POS_INF)
                )
                cand = self.run(child_path, child_members, depth + 1)
                if cand > best:
                    best = cand
        return best

    def _project(self, u: int, path: int):
        """Gate of u into ``path``: (projection node, distance, entry path).

        ``entry`` is the child path of ``path`` through which u hangs, or
        None when u lies on the path itself.  The distance accumulates the
        offsets of the path roots climbed plus one edge per climb.
        """
        hp = self.hp
        p = int(hp.path_id[u])
        if p == path:
            return u, 0, None
        dist = int(hp.offset[u])
        while True:
            father = int(hp.path_father[p])
            dist += 1
            parent_path = int(hp.path_parent[p])
            if parent_path == path:
                return father, dist, p
            dist += int(hp.offset[father])
            p = parent_path

    def _plus(self, path, lo, hi, add):
        from .heavy_path import range_argmax_plus

        res = range_argmax_plus(self.hp, path, lo, hi)
        return combine(res[1], add)

    def _minus(self, path, lo, hi, add):
        from .heavy_path import range_argmax_minus

        res = range_argmax_minus(self.hp, path, lo, hi)
        return combine(res[1], add)
