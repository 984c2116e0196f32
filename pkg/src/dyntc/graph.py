"""Dynamic digraph with reachability queries over a choice of backends.

Vertices are numbered ``1..n``. Matrix backends receive the adjacency
matrix; the path-counting backend receives single edges.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

from .boolmat import closure_array
from .closure_divcon import DivConClosure
from .closure_log import LogClosure
from .dag_counter import DagCounter
from .poly import WorkCounter

BACKENDS = ("log", "divcon", "dag_counting", "oracle_naive")

Edge = tuple[int, int]


class NaiveClosure:
    """Recomputes the closure from scratch after every change."""

    def __init__(self, n: int, counter: WorkCounter | None = None) -> None:
        self.n = n
        self.counter = counter if counter is not None else WorkCounter()
        self.init_star(np.zeros((n, n), dtype=bool))

    def _refresh(self) -> None:
        self._closure = closure_array(self._x)
        self.counter.units += self.n**3

    def init_star(self, z) -> None:
        self._x = np.array(z, dtype=bool)
        self._refresh()

    def set_star(self, i: int, delta) -> None:
        d = np.asarray(delta, dtype=bool)
        self._x[i] |= d[i]
        self._x[:, i] |= d[:, i]
        self._refresh()

    def reset_star(self, delta) -> None:
        self._x &= ~np.asarray(delta, dtype=bool)
        self._refresh()

    def lookup_star(self, x: int, y: int) -> bool:
        return bool(self._closure[x, y])

    def closure_array(self) -> np.ndarray:
        return self._closure.copy()


class DynGraph:
    def __init__(
        self,
        n: int,
        backend: str = "log",
        *,
        epsilon: float = 0.5,
        prime: int | None = None,
        seed: int | None = None,
        leaf: int = 2,
    ) -> None:
        if n < 1:
            raise ValueError("n must be positive")
        if backend not in BACKENDS:
            raise ValueError(f"unknown backend {backend!r}; choose from {BACKENDS}")
        self.n = n
        self.backend = backend
        self.counter = WorkCounter()
        if backend == "log":
            self._impl = LogClosure(n, self.counter)
        elif backend == "divcon":
            self._impl = DivConClosure(n, self.counter, leaf=leaf)
        elif backend == "oracle_naive":
            self._impl = NaiveClosure(n, self.counter)
        else:
            self._impl = DagCounter(n, epsilon=epsilon, prime=prime, seed=seed)
        self._edges: set[Edge] = set()

    @property
    def acyclic_only(self) -> bool:
        return self.backend == "dag_counting"

    @property
    def edges(self) -> set[Edge]:
        """Current edges with 1-based endpoints."""
        return {(u + 1, v + 1) for u, v in self._edges}

    @property
    def impl(self):
        return self._impl

    def _vertex(self, v: int) -> int:
        if not isinstance(v, (int, np.integer)) or not 1 <= v <= self.n:
            raise IndexError(f"vertex {v} out of range 1..{self.n}")
        return int(v) - 1

    def _edge_list(self, edges: Iterable[Edge]) -> list[Edge]:
        return [(self._vertex(u), self._vertex(v)) for u, v in edges]

    def _matrix(self, edges: list[Edge]) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=bool)
        for u, v in edges:
            a[u, v] = True
        return a

    def init(self, edges: Iterable[Edge] = ()) -> None:
        es = self._edge_list(edges)
        if self.acyclic_only:
            self._impl.init(sorted(set(es)))
        else:
            self._impl.init_star(self._matrix(es))
        self._edges = set(es)

    def insert(self, v: int, edges: Iterable[Edge]) -> None:
        """Add edges that all touch vertex ``v``."""
        c = self._vertex(v)
        es = self._edge_list(edges)
        for e in es:
            if c not in e:
                raise ValueError(f"edge {(e[0] + 1, e[1] + 1)} is not incident to vertex {v}")
        fresh = sorted(set(es) - self._edges)
        if not fresh:
            return
        if self.acyclic_only:
            done = []
            try:
                for e in fresh:
                    self._impl.insert_edge(*e)
                    done.append(e)
            except ValueError:
                for e in reversed(done):
                    self._impl.delete_edge(*e)
                raise
        else:
            self._impl.set_star(c, self._matrix(fresh))
        self._edges.update(fresh)

    def delete(self, edges: Iterable[Edge]) -> None:
        es = sorted(set(self._edge_list(edges)))
        missing = [e for e in es if e not in self._edges]
        if missing:
            u, v = missing[0]
            raise ValueError(f"edge {(u + 1, v + 1)} is not in the graph")
        if not es:
            return
        if self.acyclic_only:
            for e in es:
                self._impl.delete_edge(*e)
        else:
            self._impl.reset_star(self._matrix(es))
        self._edges.difference_update(es)

    def query(self, x: int, y: int) -> bool:
        a, b = self._vertex(x), self._vertex(y)
        if self.acyclic_only:
            return self._impl.query(a, b)
        return self._impl.lookup_star(a, b)

    def reach_matrix(self) -> np.ndarray:
        """All query answers, 0-based, as a Boolean array."""
        if self.acyclic_only:
            return self._impl.matrix.dense() != 0
        if self.backend == "oracle_naive":
            return self._impl.closure_array()
        return self._impl.closure().array.copy()
