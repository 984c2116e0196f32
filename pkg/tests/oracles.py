"""Independent reference computations used across the test suite."""

from __future__ import annotations

from collections import deque
from itertools import product

import numpy as np


def bfs_closure(adj: np.ndarray) -> np.ndarray:
    """Reflexive reachability by breadth-first search from every source."""
    n = adj.shape[0]
    out = np.zeros((n, n), dtype=bool)
    succ = [np.flatnonzero(adj[u]) for u in range(n)]
    for s in range(n):
        seen = out[s]
        seen[s] = True
        q = deque([s])
        while q:
            u = q.popleft()
            for v in succ[u]:
                if not seen[v]:
                    seen[v] = True
                    q.append(v)
    return out


def bounded_reach(adj: np.ndarray, max_len: int) -> np.ndarray:
    """``out[x, y]`` iff a walk x->y with between 1 and ``max_len`` edges exists."""
    a = adj.astype(np.int64)
    cur = a.copy()
    out = cur > 0
    for _ in range(max_len - 1):
        cur = ((cur @ a) > 0).astype(np.int64)
        out |= cur > 0
    return out


def triple_product(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    n = x.shape[0]
    out = np.zeros((n, n), dtype=bool)
    for i, j, k in product(range(n), repeat=3):
        if x[i, j] and y[j, k]:
            out[i, k] = True
    return out


def chain_product(factors) -> np.ndarray:
    acc = np.asarray(factors[0], dtype=bool)
    for f in factors[1:]:
        acc = (acc.astype(np.int64) @ np.asarray(f, dtype=np.int64)) > 0
    return acc


def brute_witness_counts(ps, a: int) -> np.ndarray:
    """Witness counts of term ``a`` filtered by the timestamp predicate."""
    x1, x2 = ps.x1[a], ps.x2[a]
    lf1, lf2 = ps.lf1[a], ps.lf2[a]
    lr1, lc1, lr2, lc2 = ps.lr1[a], ps.lc1[a], ps.lr2[a], ps.lc2[a]
    # axes: x, y, z
    flip = np.maximum(lf1[:, :, None], lf2[None, :, :])
    stamp = np.maximum(
        np.maximum(lr1[:, None, None], lc1[None, :, None]),
        np.maximum(lr2[None, :, None], lc2[None, None, :]),
    )
    ok = x1[:, :, None] & x2[None, :, :] & (flip <= stamp)
    return ok.sum(axis=1)


def dag_path_counts(adj: np.ndarray) -> np.ndarray:
    """Exact number of distinct paths (empty path on the diagonal) in a DAG."""
    n = adj.shape[0]
    order = topo_order(adj)
    counts = [[0] * n for _ in range(n)]
    for s in range(n):
        counts[s][s] = 1
        for u in order:
            if counts[s][u]:
                for v in np.flatnonzero(adj[u]):
                    counts[s][int(v)] += counts[s][u]
    return counts


def topo_order(adj: np.ndarray) -> list[int]:
    n = adj.shape[0]
    indeg = adj.sum(axis=0).astype(int).tolist()
    q = deque(u for u in range(n) if indeg[u] == 0)
    out = []
    while q:
        u = q.popleft()
        out.append(u)
        for v in np.flatnonzero(adj[u]):
            indeg[v] -= 1
            if indeg[v] == 0:
                q.append(int(v))
    if len(out) != n:
        raise ValueError("graph has a cycle")
    return out


class SandwichTracker:
    """Tracks the true polynomial value and the non-lazy accumulation.

    The tracked set flips an entry whenever the true value flips under an
    operation other than a lazy set, and restarts from the true value at
    every init.
    """

    def __init__(self, exact_fn):
        self.exact_fn = exact_fn
        self.value = exact_fn()
        self.acc = self.value.copy()

    def after(self, kind: str) -> None:
        new = self.exact_fn()
        if kind == "init":
            self.acc = new.copy()
        elif kind != "lazy":
            self.acc = (self.acc | (new & ~self.value)) & ~(self.value & ~new)
        self.value = new

    def violations(self, got: np.ndarray) -> tuple[int, int]:
        """(ones missing from the lookup, ones the lookup should not have)."""
        return int((self.acc & ~got).sum()), int((got & ~self.value).sum())
