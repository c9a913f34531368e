# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: BFS sweeps, tree aggregates, index cell scans.

Mirrors ``pure.py``; selected automatically at import when built.
"""

import numpy as np

cimport cython
cimport numpy as cnp

cnp.import_array()

BACKEND_NAME = "compiled"


cdef void _bfs_fill(const int[:] indptr, const int[:] indices, int source,
                    int[:] dist, int[:] queue) noexcept nogil:
    cdef Py_ssize_t head = 0, tail = 0
    cdef int v, w
    cdef Py_ssize_t e
    dist[source] = 0
    queue[tail] = source
    tail += 1
    while head < tail:
        v = queue[head]
        head += 1
        for e in range(indptr[v], indptr[v + 1]):
            w = indices[e]
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                queue[tail] = w
                tail += 1


def bfs(indptr, indices, source):
    """Unit-weight distances from ``source``; unreachable nodes get -1."""
    cdef Py_ssize_t n = indptr.shape[0] - 1
    dist = np.full(n, -1, dtype=np.int32)
    queue = np.empty(n, dtype=np.int32)
    _bfs_fill(indptr, indices, source, dist, queue)
    return dist


def bfs_rows(indptr, indices, sources):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    sources = np.asarray(sources, dtype=np.int64)
    cdef Py_ssize_t rows = sources.shape[0]
    out = np.full((rows, n), -1, dtype=np.int32)
    queue = np.empty(n, dtype=np.int32)
    cdef int[:, :] out_v = out
    cdef int[:] q_v = queue
    cdef const int[:] ip = indptr
    cdef const int[:] ix = indices
    cdef long[:] src = sources
    cdef Py_ssize_t r
    for r in range(rows):
        _bfs_fill(ip, ix, <int> src[r], out_v[r], q_v)
    return out


def apsp(indptr, indices):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    return bfs_rows(indptr, indices, np.arange(n))


def eccentricities(indptr, indices):
    """All eccentricities via one BFS per node (errors on disconnection)."""
    cdef Py_ssize_t n = indptr.shape[0] - 1
    ecc = np.empty(n, dtype=np.int32)
    dist = np.empty(n, dtype=np.int32)
    queue = np.empty(n, dtype=np.int32)
    cdef int[:] ecc_v = ecc
    cdef int[:] dist_v = dist
    cdef int[:] q_v = queue
    cdef const int[:] ip = indptr
    cdef const int[:] ix = indices
    cdef Py_ssize_t v, i
    cdef int best
    cdef bint bad = False
    with nogil:
        for v in range(n):
            if bad:
                break
            for i in range(n):
                dist_v[i] = -1
            _bfs_fill(ip, ix, <int> v, dist_v, q_v)
            best = 0
            for i in range(n):
                if dist_v[i] < 0:
                    bad = True
                    break
                if dist_v[i] > best:
                    best = dist_v[i]
            ecc_v[v] = best
    if bad:
        raise ValueError("graph is disconnected")
    return ecc


def bfs_labeled(indptr, indices, sources, labels, allowed):
    """Multi-source labeled BFS restricted to ``allowed``; see pure.py."""
    cdef Py_ssize_t n = indptr.shape[0] - 1
    dist = np.full(n, -1, dtype=np.int32)
    label = np.full(n, -1, dtype=np.int32)
    queue = np.empty(n, dtype=np.int32)
    sources = np.asarray(sources, dtype=np.int32)
    labels = np.asarray(labels, dtype=np.int32)
    allowed = np.asarray(allowed, dtype=np.uint8)
    cdef int[:] dist_v = dist
    cdef int[:] label_v = label
    cdef int[:] q_v = queue
    cdef const int[:] ip = indptr
    cdef const int[:] ix = indices
    cdef const int[:] src = sources
    cdef const int[:] lab = labels
    cdef const unsigned char[:] ok_v = allowed
    cdef Py_ssize_t head = 0, tail = 0, e
    cdef Py_ssize_t i
    cdef int v, w
    cdef bint unique = True
    for i in range(src.shape[0]):
        v = src[i]
        dist_v[v] = 0
        label_v[v] = lab[i]
        q_v[tail] = v
        tail += 1
    with nogil:
        while head < tail:
            v = q_v[head]
            head += 1
            for e in range(ip[v], ip[v + 1]):
                w = ix[e]
                if not ok_v[w]:
                    continue
                if dist_v[w] < 0:
                    dist_v[w] = dist_v[v] + 1
                    label_v[w] = label_v[v]
                    q_v[tail] = w
                    tail += 1
                elif dist_v[w] == dist_v[v] + 1 and label_v[w] != label_v[v]:
                    unique = False
    return dist, label, unique


def subtree_aggregates(order, parent, alpha):
    """Sizes, heavy children (first-in-adjacency ties) and h/hr aggregates."""
    cdef Py_ssize_t n = order.shape[0]
    size = np.ones(n, dtype=np.int64)
    heavy = np.full(n, -1, dtype=np.int32)
    taken = np.zeros(n, dtype=np.int64)
    h = np.array(alpha, dtype=np.float64, copy=True)
    hr = np.array(alpha, dtype=np.float64, copy=True)
    cdef long[:] size_v = size
    cdef int[:] heavy_v = heavy
    cdef long[:] taken_v = taken
    cdef double[:] h_v = h
    cdef double[:] hr_v = hr
    cdef const int[:] order_v = order
    cdef const int[:] parent_v = parent
    cdef Py_ssize_t idx
    cdef int v, p
    cdef double hv
    with nogil:
        for idx in range(n - 1, 0, -1):
            v = order_v[idx]
            size_v[parent_v[v]] += size_v[v]
        for idx in range(1, n):
            v = order_v[idx]
            p = parent_v[v]
            if size_v[v] > taken_v[p]:
                taken_v[p] = size_v[v]
                heavy_v[p] = v
        for idx in range(n - 1, 0, -1):
            v = order_v[idx]
            p = parent_v[v]
            hv = h_v[v] + 1.0
            if hv > h_v[p]:
                h_v[p] = hv
            if v != heavy_v[p] and hv > hr_v[p]:
                hr_v[p] = hv
    return size, heavy, h, hr


cdef Py_ssize_t _find_key(const long[:] keys, long key) noexcept nogil:
    cdef Py_ssize_t lo = 0, hi = keys.shape[0], mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if keys[mid] < key:
            lo = mid + 1
        else:
            hi = mid
    if lo < keys.shape[0] and keys[lo] == key:
        return lo
    return -1


cdef Py_ssize_t _scan_sum(const int[:, :] ev, Py_ssize_t start,
                          Py_ssize_t end, const long[:] forbid,
                          Py_ssize_t k) noexcept nogil:
    cdef Py_ssize_t p, j
    cdef bint ok
    for p in range(start, end):
        ok = True
        for j in range(k):
            if forbid[j] >= 0 and ev[p, j] == forbid[j]:
                ok = False
                break
        if ok:
            return p
    return -1


def sum_query_full(anc_c, anc_d, anc_u, lens, strides,
                   cell_keys, cell_lo, cell_hi, evens, fvals):
    """Best (value, point row) over all ancestor-tuple cells, sum mode."""
    cdef const long[:, :] ac = anc_c
    cdef const long[:, :] ad = anc_d
    cdef const long[:, :] au = anc_u
    cdef const long[:] ln = lens
    cdef const long[:] st = strides
    cdef const long[:] keys = cell_keys
    cdef const long[:] clo = cell_lo
    cdef const long[:] chi = cell_hi
    cdef const int[:, :] ev = evens
    cdef const long[:] fv = fvals
    cdef Py_ssize_t k = ln.shape[0]
    combo_arr = np.zeros(k, dtype=np.int64)
    forbid_arr = np.zeros(k, dtype=np.int64)
    cdef long[:] combo = combo_arr
    cdef long[:] forbid = forbid_arr
    cdef long best_val = -1
    cdef Py_ssize_t best_row = -1
    cdef long key, add, val
    cdef Py_ssize_t i, t, pos, row
    cdef bint done = False
    with nogil:
        while not done:
            key = 0
            add = 0
            for i in range(k):
                t = combo[i]
                key += ac[i, t] * st[i]
                add += ad[i, t]
                forbid[i] = au[i, t]
            pos = _find_key(keys, key)
            if pos >= 0:
                row = _scan_sum(ev, clo[pos], chi[pos], forbid, k)
                if row >= 0:
                    val = fv[row] + add
                    if val > best_val:
                        best_val = val
                        best_row = row
            # odometer step
            i = k - 1
            while True:
                combo[i] += 1
                if combo[i] < ln[i]:
                    break
                combo[i] = 0
                if i == 0:
                    done = True
                    break
                i -= 1
    return int(best_val), int(best_row)


def min_query_full(anc_c, anc_d, anc_u, lens, strides,
                   cell_keys, cell_lo, cell_hi, evens, fvals, deltas):
    """Best (value, point row) over (cell, coordinate slot) pairs, min mode."""
    cdef const long[:, :] ac = anc_c
    cdef const long[:, :] ad = anc_d
    cdef const long[:, :] au = anc_u
    cdef const long[:] ln = lens
    cdef const long[:] st = strides
    cdef const long[:] keys = cell_keys
    cdef const long[:] clo = cell_lo
    cdef const long[:] chi = cell_hi
    cdef const int[:, :] ev = evens
    cdef const long[:] fv = fvals
    cdef const int[:, :] dl = deltas
    cdef Py_ssize_t k = ln.shape[0]
    combo_arr = np.zeros(k, dtype=np.int64)
    forbid_arr = np.zeros(k, dtype=np.int64)
    dq_arr = np.zeros(k, dtype=np.int64)
    cdef long[:] combo = combo_arr
    cdef long[:] forbid = forbid_arr
    cdef long[:] dq = dq_arr
    cdef long best_val = -1
    cdef Py_ssize_t best_row = -1
    cdef long base, key, val, bound
    cdef Py_ssize_t i, t, pos, row, p, j, jj
    cdef bint done = False, ok
    with nogil:
        while not done:
            base = 0
            for i in range(k):
                t = combo[i]
                base += ac[i, t] * st[i]
                dq[i] = ad[i, t]
                forbid[i] = au[i, t]
            for i in range(k):
                key = base * k + i
                pos = _find_key(keys, key)
                if pos < 0:
                    continue
                for p in range(clo[pos], chi[pos]):
                    ok = True
                    for j in range(k):
                        if forbid[j] >= 0 and ev[p, j] == forbid[j]:
                            ok = False
                            break
                    if ok:
                        jj = 0
                        for j in range(k):
                            if j == i:
                                continue
                            bound = dq[j] - dq[i]
                            if dl[p, jj] > bound:
                                ok = False
                                break
                            jj += 1
                    if ok:
                        val = fv[p] + dq[i]
                        if val > best_val:
                            best_val = val
                            best_row = p
                        break
            i = k - 1
            while True:
                combo[i] += 1
                if combo[i] < ln[i]:
                    break
                combo[i] = 0
                if i == 0:
                    done = True
                    break
                i -= 1
    return int(best_val), int(best_row)


def cell_scan_sum(evens, Py_ssize_t start, Py_ssize_t end, forbid):
    """First point in [start, end) avoiding the forbidden even coords."""
    cdef const int[:, :] ev = evens
    cdef const int[:] fb = forbid
    cdef Py_ssize_t k = fb.shape[0]
    cdef Py_ssize_t p, j
    cdef bint ok
    with nogil:
        for p in range(start, end):
            ok = True
            for j in range(k):
                if fb[j] >= 0 and ev[p, j] == fb[j]:
                    ok = False
                    break
            if ok:
                with gil:
                    return p
    return -1


def cell_scan_min(evens, deltas, Py_ssize_t start, Py_ssize_t end,
                  forbid, bounds):
    """As cell_scan_sum, plus upper bounds on the delta coordinates."""
    cdef const int[:, :] ev = evens
    cdef const int[:, :] dl = deltas
    cdef const int[:] fb = forbid
    cdef const int[:] bd = bounds
    cdef Py_ssize_t k = fb.shape[0]
    cdef Py_ssize_t kd = dl.shape[1]
    cdef Py_ssize_t p, j
    cdef bint ok
    with nogil:
        for p in range(start, end):
            ok = True
            for j in range(k):
                if fb[j] >= 0 and ev[p, j] == fb[j]:
                    ok = False
                    break
            if ok:
                for j in range(kd):
                    if dl[p, j] > bd[j]:
                        ok = False
                        break
            if ok:
                with gil:
                    return p
    return -1
