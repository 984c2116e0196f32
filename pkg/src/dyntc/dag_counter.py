"""Reachability in a dynamic DAG by counting paths modulo a random prime.

``M[x, y]`` holds the number of distinct paths from ``x`` to ``y`` modulo
``p``, the empty path included, so ``M[x, x] = 1``. Adding edge ``(u, v)``
adds ``M[., u] . M[v, .]``; removing it subtracts the same product taken
after the edge is gone. A nonzero count proves reachability; a zero count
can be wrong only if ``p`` divides the true count.
"""

from __future__ import annotations

import random

import numpy as np
from sympy import isprime, nextprime

from .lazy_intmat import LazyIntMatrix

_LOW = 1 << 61
_HIGH = 1 << 62


def random_prime(seed: int | None = None) -> int:
    """A prime drawn from ``[2^61, 2^62)``."""
    rng = random.Random(seed)
    while True:
        p = nextprime(rng.randrange(_LOW, _HIGH))
        if p < _HIGH:
            return int(p)


class CycleError(ValueError):
    """Raised when an insertion would close a directed cycle."""

    def __init__(self, edge: tuple[int, int], path: list[int]) -> None:
        self.edge = edge
        self.path = path
        super().__init__(f"edge {edge} closes a cycle through back-path {path}")


class DagCounter:
    def __init__(
        self,
        n: int,
        epsilon: float = 0.5,
        prime: int | None = None,
        seed: int | None = None,
    ) -> None:
        if n < 1:
            raise ValueError("n must be positive")
        if prime is None:
            prime = random_prime(seed)
        elif not isprime(prime):
            raise ValueError(f"{prime} is not prime")
        self.n = n
        self.prime = int(prime)
        self.matrix = LazyIntMatrix(n, epsilon, self.prime)
        self.init()

    def init(self, edges=()) -> None:
        self.succ: list[set[int]] = [set() for _ in range(self.n)]
        self.matrix.init(np.eye(self.n, dtype=np.int64))
        for x, y in edges:
            self.insert_edge(x, y)

    @property
    def edges(self) -> set[tuple[int, int]]:
        return {(u, v) for u in range(self.n) for v in self.succ[u]}

    def _check_index(self, i: int) -> None:
        if not 0 <= i < self.n:
            raise IndexError(f"vertex {i} out of range for n={self.n}")

    def _path(self, src: int, dst: int) -> list[int] | None:
        """A path ``src -> dst`` in the current edge set, by DFS."""
        parent = {src: src}
        stack = [src]
        while stack:
            u = stack.pop()
            if u == dst:
                path = [u]
                while u != src:
                    u = parent[u]
                    path.append(u)
                return path[::-1]
            for v in self.succ[u]:
                if v not in parent:
                    parent[v] = u
                    stack.append(v)
        return None

    def _bump(self, x: int, y: int, sign: int) -> None:
        col = self.matrix.column(x)
        row = self.matrix.row(y)
        self.matrix.update(col if sign > 0 else -col, row)

    def insert_edge(self, x: int, y: int) -> None:
        self._check_index(x)
        self._check_index(y)
        if y in self.succ[x]:
            raise ValueError(f"edge {(x, y)} already present")
        back = self._path(y, x)
        if back is not None:
            raise CycleError((x, y), back)
        self._bump(x, y, 1)
        self.succ[x].add(y)

    def delete_edge(self, x: int, y: int) -> None:
        self._check_index(x)
        self._check_index(y)
        if y not in self.succ[x]:
            raise ValueError(f"edge {(x, y)} not present")
        # acyclic, so paths into x and out of y never use (x, y)
        self._bump(x, y, -1)
        self.succ[x].discard(y)

    def count(self, x: int, y: int) -> int:
        return self.matrix.lookup(x, y)

    def query(self, x: int, y: int) -> bool:
        return self.count(x, y) != 0
