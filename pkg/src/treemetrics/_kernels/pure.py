"""Pure numpy/python implementations of the hot kernels.

Same signatures as the compiled module ``_ck``; used as the fallback when the
extension is not built (and directly by the benchmark that compares both).
Graphs are CSR adjacency: ``indptr`` (n+1,) and ``indices`` (m,) int32 arrays.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "pure"


def _gather_neighbors(indptr, indices, frontier):
    starts = indptr[frontier]
    counts = indptr[frontier + 1] - starts
    total = int(counts.sum())
    if total == 0:
        return indices[:0], None, None
    base = np.repeat(starts, counts)
    step = np.arange(total, dtype=np.int64) - np.repeat(
        np.cumsum(counts) - counts, counts
    )
    return indices[base + step], counts, total


def bfs(indptr, indices, source):
    """Unit-weight distances from ``source``; unreachable nodes get -1."""
    n = indptr.shape[0] - 1
    dist = np.full(n, -1, dtype=np.int32)
    dist[source] = 0
    frontier = np.array([source], dtype=np.int32)
    d = 0
    while frontier.size:
        neigh, _, _ = _gather_neighbors(indptr, indices, frontier)
        neigh = neigh[dist[neigh] < 0]
        if neigh.size == 0:
            break
        frontier = np.unique(neigh)
        d += 1
        dist[frontier] = d
    return dist


def bfs_rows(indptr, indices, sources):
    """Stack of BFS distance rows, one per source."""
    return np.stack([bfs(indptr, indices, int(s)) for s in sources])


def apsp(indptr, indices):
    n = indptr.shape[0] - 1
    return bfs_rows(indptr, indices, np.arange(n))


def eccentricities(indptr, indices):
    """All eccentricities via one BFS per node (errors on disconnection)."""
    n = indptr.shape[0] - 1
    ecc = np.empty(n, dtype=np.int32)
    for v in range(n):
        row = bfs(indptr, indices, v)
        if (row < 0).any():
            raise ValueError("graph is disconnected")
        ecc[v] = row.max()
    return ecc


def bfs_labeled(indptr, indices, sources, labels, allowed):
    """Multi-source BFS with per-source labels, restricted to ``allowed``.

    Returns ``(dist, label, ok)``.  ``ok`` is False when some vertex is
    reached at equal distance from two differently labeled parents, i.e. its
    nearest source is ambiguous.  Unreached vertices keep dist -1.
    """
    n = indptr.shape[0] - 1
    dist = np.full(n, -1, dtype=np.int32)
    label = np.full(n, -1, dtype=np.int32)
    sources = np.asarray(sources, dtype=np.int32)
    dist[sources] = 0
    label[sources] = labels
    frontier = sources
    ok = True
    d = 0
    while frontier.size:
        d += 1
        neigh, counts, total = _gather_neighbors(indptr, indices, frontier)
        if total is None:
            break
        src_label = np.repeat(label[frontier], counts)
        keep = allowed[neigh]
        neigh, src_label = neigh[keep], src_label[keep]
        same_level = dist[neigh] == d
        if (label[neigh[same_level]] != src_label[same_level]).any():
            ok = False
        fresh = dist[neigh] < 0
        neigh, src_label = neigh[fresh], src_label[fresh]
        if neigh.size == 0:
            continue
        order = np.argsort(neigh, kind="stable")
        neigh, src_label = neigh[order], src_label[order]
        uniq, first = np.unique(neigh, return_index=True)
        lab_min = np.minimum.reduceat(src_label, first)
        lab_max = np.maximum.reduceat(src_label, first)
        if (lab_min != lab_max).any():
            ok = False
        dist[uniq] = d
        label[uniq] = lab_min
        frontier = uniq.astype(np.int32)
    return dist, label, ok


def subtree_aggregates(order, parent, alpha):
    """Sizes, heavy children and height aggregates over a rooted tree.

    ``order`` is a preorder (root first) in which children of any node appear
    in adjacency order; ``parent`` maps each node to its parent (-1 at the
    root).  The heavy child is the first child, in adjacency order, attaining
    the maximal subtree size.  Returns ``(size, heavy, h, hr)`` where ``h``
    and ``hr`` are the downward aggregates ``max(d(v, x) + alpha[x])`` over
    the full subtree of v, resp. the subtree minus the heavy branch.
    """
    n = order.shape[0]
    size = np.ones(n, dtype=np.int64)
    for idx in range(n - 1, 0, -1):
        v = order[idx]
        size[parent[v]] += size[v]
    heavy = np.full(n, -1, dtype=np.int32)
    taken = np.zeros(n, dtype=np.int64)
    for idx in range(1, n):
        v = order[idx]
        p = parent[v]
        if size[v] > taken[p]:
            taken[p] = size[v]
            heavy[p] = v
    h = np.array(alpha, dtype=np.float64, copy=True)
    hr = np.array(alpha, dtype=np.float64, copy=True)
    for idx in range(n - 1, 0, -1):
        v = order[idx]
        p = parent[v]
        hv = h[v] + 1.0
        if hv > h[p]:
            h[p] = hv
        if v != heavy[p] and hv > hr[p]:
            hr[p] = hv
    return size, heavy, h, hr


def cell_scan_sum(evens, start, end, forbid):
    """First point in ``[start, end)`` whose even coords all avoid ``forbid``.

    Points are sorted by value descending, so the first hit is the cell
    maximum.  ``forbid[j] < 0`` means no constraint on coordinate j.
    Returns the point row or -1.
    """
    k = forbid.shape[0]
    for p in range(start, end):
        ok = True
        for j in range(k):
            u = forbid[j]
            if u >= 0 and evens[p, j] == u:
                ok = False
                break
        if ok:
            return p
    return -1


def _combos(lens):
    from itertools import product

    return product(*(range(int(x)) for x in lens))


def sum_query_full(anc_c, anc_d, anc_u, lens, strides,
                   cell_keys, cell_lo, cell_hi, evens, fvals):
    """Best (value, point row) over all ancestor-tuple cells, sum mode.

    Per cell: pack the key, binary-search the cell table, scan the value
    sorted bucket past the excluded step-down neighbours.
    """
    k = lens.shape[0]
    best_val, best_row = -1, -1
    forbid = np.empty(k, dtype=np.int32)
    for combo in _combos(lens):
        key = 0
        add = 0
        for i in range(k):
            t = combo[i]
            key += anc_c[i, t] * strides[i]
            add += anc_d[i, t]
            forbid[i] = anc_u[i, t]
        pos = np.searchsorted(cell_keys, key)
        if pos >= cell_keys.shape[0] or cell_keys[pos] != key:
            continue
        row = cell_scan_sum(evens, int(cell_lo[pos]), int(cell_hi[pos]), forbid)
        if row >= 0:
            val = int(fvals[row]) + int(add)
            if val > best_val:
                best_val, best_row = val, row
    return best_val, best_row


def min_query_full(anc_c, anc_d, anc_u, lens, strides,
                   cell_keys, cell_lo, cell_hi, evens, fvals, deltas):
    """Best (value, point row) over (cell, coordinate slot) pairs, min mode."""
    k = lens.shape[0]
    best_val, best_row = -1, -1
    forbid = np.empty(k, dtype=np.int32)
    dq = np.empty(k, dtype=np.int64)
    for combo in _combos(lens):
        base = 0
        for i in range(k):
            t = combo[i]
            base += anc_c[i, t] * strides[i]
            dq[i] = anc_d[i, t]
            forbid[i] = anc_u[i, t]
        for i in range(k):
            key = base * k + i
            pos = np.searchsorted(cell_keys, key)
            if pos >= cell_keys.shape[0] or cell_keys[pos] != key:
                continue
            bounds = np.array(
                [dq[j] - dq[i] for j in range(k) if j != i], dtype=np.int32
            )
            row = cell_scan_min(
                evens, deltas, int(cell_lo[pos]), int(cell_hi[pos]),
                forbid, bounds,
            )
            if row >= 0:
                val = int(fvals[row]) + int(dq[i])
                if val > best_val:
                    best_val, best_row = val, row
    return best_val, best_row


def cell_scan_min(evens, deltas, start, end, forbid, bounds):
    """As :func:`cell_scan_sum` with upper bounds on the delta coords."""
    k = forbid.shape[0]
    kd = deltas.shape[1]
    for p in range(start, end):
        ok = True
        for j in range(k):
            u = forbid[j]
            if u >= 0 and evens[p, j] == u:
                ok = False
                break
        if ok:
            for j in range(kd):
                if deltas[p, j] > bounds[j]:
                    ok = False
                    break
        if ok:
            return p
    return -1
