"""Dynamic Kleene closure through a tower of degree-3 polynomials.

Level ``k`` holds ``Y_k = Y_{k-1} + Y_{k-1}^2 + Y_{k-1}^3`` with
``Y_0 = X``. After ``log2(n)`` levels the value contains every path of
length at least one, so the closure is the identity plus the top level.
"""

from __future__ import annotations

import numpy as np

from .boolmat import BoolMatrix, next_pow2
from .poly import PolyK, WorkCounter, as_array

# each occurrence of the previous level is its own variable
_OCCURRENCES = ((0, 0), (1, 0), (1, 1), (2, 0), (2, 1), (2, 2))


class LogClosure:
    def __init__(self, n: int, counter: WorkCounter | None = None) -> None:
        if n < 1:
            raise ValueError("n must be positive")
        self.n = n
        self.size = next_pow2(n)
        self.counter = counter if counter is not None else WorkCounter()
        depth = self.size.bit_length() - 1
        self.levels = [PolyK(self.size, (1, 2, 3), self.counter) for _ in range(depth)]
        self._x = np.zeros((self.size, self.size), dtype=bool)
        self._closure = np.eye(self.size, dtype=bool)

    @property
    def x(self) -> BoolMatrix:
        return BoolMatrix(self._x[: self.n, : self.n])

    def closure(self) -> BoolMatrix:
        return BoolMatrix(self._closure[: self.n, : self.n])

    def _pad(self, m) -> np.ndarray:
        a = as_array(m, self.n)
        if self.size == self.n:
            return np.array(a, dtype=bool, order="C")
        out = np.zeros((self.size, self.size), dtype=bool)
        out[: self.n, : self.n] = a
        return out

    def _check_index(self, i: int) -> None:
        if not 0 <= i < self.n:
            raise IndexError(f"index {i} out of range for n={self.n}")

    def _refresh(self, top: np.ndarray) -> None:
        self._closure = top.copy()
        np.fill_diagonal(self._closure, True)

    def init_star(self, z) -> None:
        self._x = self._pad(z)
        below = self._x
        for level in self.levels:
            level._init([[below], [below, below], [below, below, below]])
            below = level.lookup_array()
        self._refresh(below)

    def set_star(self, i: int, delta) -> None:
        """Add row ``i`` and column ``i`` of ``delta`` to the input."""
        self._check_index(i)
        d = self._pad(delta)
        slab = np.zeros_like(d)
        slab[i] = d[i]
        slab[:, i] = d[:, i]
        self._x |= slab
        dy = slab
        for level in self.levels:
            row = np.ascontiguousarray(dy[i])
            col = np.ascontiguousarray(dy[:, i])
            for a, c in _OCCURRENCES:
                level._lazy(dy, a, c)
            for a, c in _OCCURRENCES:
                level._row(i, row, a, c)
                level._col(i, col, a, c)
            dy = level.lookup_array()
        self._refresh(dy)

    def reset_star(self, delta) -> None:
        d = self._pad(delta)
        if np.any(d & ~self._x):
            raise ValueError("reset delta has ones outside the input")
        if not d.any():
            return
        self._x &= ~d
        lost, grown = d, None
        for level in self.levels:
            before = level.lookup_array()
            for a, c in _OCCURRENCES:
                level._reset(lost, a, c)
                if grown is not None:
                    level._lazy(grown, a, c)
            after = level.lookup_array()
            lost, grown = before & ~after, after & ~before
            if not grown.any():
                grown = None
                if not lost.any():
                    break
        self._refresh(self.levels[-1].lookup_array() if self.levels else self._x)

    def lookup_star(self, x: int, y: int) -> bool:
        self._check_index(x)
        self._check_index(y)
        return bool(self._closure[x, y])

    def polys(self):
        return list(self.levels)
