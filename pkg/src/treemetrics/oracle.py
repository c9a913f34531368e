"""Brute-force reference implementations.

Definitional, clarity-first evaluators used to verify every index in the
package.  They refuse instances whose estimated cost exceeds a budget so a
misconfigured test cannot silently take hours.
"""

from __future__ import annotations

import numpy as np

from ._kernels import apsp as _apsp_kernel
from ._kernels import bfs as _bfs
from .extreal import NEG_INF, POS_INF

# rough unit-operation allowance for a single oracle call
DEFAULT_BUDGET = 2_000_000_000


class OracleBudgetError(RuntimeError):
    """The requested brute-force computation exceeds the cost budget."""


def _guard(cost: int, budget: int | None):
    limit = DEFAULT_BUDGET if budget is None else budget
    if cost > limit:
        raise OracleBudgetError(
            f"estimated cost {cost:.2e} exceeds budget {limit:.2e}"
        )


def apsp(graph, budget: int | None = None) -> np.ndarray:
    """Distance matrix via one BFS per node; raises on disconnection."""
    indptr, indices = graph.csr
    n = indptr.shape[0] - 1
    _guard(n * (n + indices.shape[0]), budget)
    mat = _apsp_kernel(indptr, indices)
    if (mat < 0).any():
        raise ValueError("graph is disconnected")
    return mat


def eccentricities(graph, budget: int | None = None) -> np.ndarray:
    return apsp(graph, budget).max(axis=1)


def diameter(graph, budget: int | None = None) -> int:
    return int(apsp(graph, budget).max())


def radius(graph, budget: int | None = None) -> int:
    return int(eccentricities(graph, budget).min())


def brute_odot(system, points, v, op: str, budget: int | None = None):
    """max over s in ``points`` of op-combined coordinate distances.

    ``op`` is one of "sum", "min", "max"; ``v`` and the elements of
    ``points`` are coordinate tuples over the system's trees.
    """
    trees = system.trees
    k = len(trees)
    _guard(sum(t.node_count for t in trees) + len(points) * k, budget)
    rows = []
    for i, t in enumerate(trees):
        indptr, indices = t.csr
        rows.append(_bfs(indptr, indices, v[i]))
    pts = np.asarray(points, dtype=np.int64)
    per_coord = np.stack(
        [rows[i][pts[:, i]] for i in range(k)], axis=1
    )
    if op == "sum":
        vals = per_coord.sum(axis=1)
    elif op == "min":
        vals = per_coord.min(axis=1)
    elif op == "max":
        vals = per_coord.max(axis=1)
    else:
        raise ValueError(f"unknown combiner {op!r}")
    return int(vals.max())


def brute_subset_ecc(tree, alpha, nodes, beta, budget: int | None = None):
    """max over v of min over u of (alpha[v] + d(v, u) + beta[u])."""
    nodes = list(nodes)
    if not nodes:
        raise ValueError("U must be nonempty")
    beta = list(beta)
    n = tree.node_count
    _guard(len(nodes) * n, budget)
    indptr, indices = tree.csr
    inner = np.full(n, POS_INF)
    for u, b in zip(nodes, beta):
        d = _bfs(indptr, indices, u)
        np.minimum(inner, d + b, out=inner)
    alpha = np.asarray(alpha, dtype=np.float64)
    vals = np.where(alpha == NEG_INF, NEG_INF, alpha + inner)
    return float(vals.max())


def brute_imprints(dist_rows: np.ndarray, boundary, u: int) -> set[int]:
    """Imprints of ``u`` on a vertex set, by the metric criterion.

    ``dist_rows[i]`` is the distance row of ``boundary[i]`` in the ambient
    (sub)graph.  A boundary vertex a is an imprint of u iff no other boundary
    vertex a' lies on a shortest u-a path, i.e. d(u,a') + d(a',a) > d(u,a)
    for all a' != a.
    """
    result = set()
    t = len(boundary)
    for i, a in enumerate(boundary):
        da = dist_rows[i][u]
        blocked = False
        for j in range(t):
            if j != i and dist_rows[j][u] + dist_rows[j][boundary[i]] == da:
                blocked = True
                break
        if not blocked:
            result.add(a)
    return result
