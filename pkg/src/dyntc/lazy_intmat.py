"""Integer matrix with buffered rank-one updates.

The logical value is ``lazy + buf_j[:, :t] @ buf_i[:t, :]``. Up to ``cap``
outer products sit in the buffers; the next update folds them into
``lazy`` with one rectangular product.
"""

from __future__ import annotations

import math

import numpy as np


class LazyIntMatrix:
    def __init__(self, n: int, epsilon: float = 0.5, modulus: int | None = None) -> None:
        if n < 1:
            raise ValueError("n must be positive")
        if not 0.0 <= epsilon <= 1.0:
            raise ValueError("epsilon must lie in [0, 1]")
        if modulus is not None and modulus < 2:
            raise ValueError("modulus must be at least 2")
        self.n = n
        self.epsilon = epsilon
        self.cap = max(1, math.ceil(n**epsilon - 1e-9))
        self.modulus = modulus
        # exact Python ints under a modulus; wrapping int64 otherwise
        self._dtype = object if modulus is not None else np.int64
        self.rebuilds = 0
        self.max_scan = 0
        self.init(np.zeros((n, n), dtype=np.int64))

    def _reduce(self, a):
        if self.modulus is None:
            return a
        return a % self.modulus

    def _vec(self, v) -> np.ndarray:
        arr = np.asarray(v)
        if arr.shape != (self.n,):
            raise ValueError(f"expected a vector of length {self.n}")
        return self._reduce(np.array([int(e) for e in arr], dtype=self._dtype))

    def _check_index(self, i: int) -> None:
        if not 0 <= i < self.n:
            raise IndexError(f"index {i} out of range for n={self.n}")

    def init(self, x) -> None:
        arr = np.asarray(x)
        if arr.shape != (self.n, self.n):
            raise ValueError(f"expected a {self.n}x{self.n} matrix")
        self.lazy = self._reduce(np.array(arr.tolist(), dtype=self._dtype).reshape(self.n, self.n))
        self.buf_j = np.zeros((self.n, self.cap), dtype=self._dtype)
        self.buf_i = np.zeros((self.cap, self.n), dtype=self._dtype)
        self.t = 0

    def update(self, col, row) -> None:
        """Add the outer product ``col . row`` to the logical matrix."""
        j = self._vec(col)
        i = self._vec(row)
        if self.t == self.cap:
            self._rebuild()
        self.buf_j[:, self.t] = j
        self.buf_i[self.t, :] = i
        self.t += 1

    def _rebuild(self) -> None:
        with np.errstate(over="ignore"):
            self.lazy = self._reduce(self.lazy + self.buf_j @ self.buf_i)
        self.buf_j[:] = 0
        self.buf_i[:] = 0
        self.t = 0
        self.rebuilds += 1

    def lookup(self, x: int, y: int) -> int:
        self._check_index(x)
        self._check_index(y)
        t = self.t
        self.max_scan = max(self.max_scan, t)
        with np.errstate(over="ignore"):
            val = self.lazy[x, y] + np.dot(self.buf_j[x, :t], self.buf_i[:t, y])
        return int(self._reduce(val))

    def column(self, y: int) -> np.ndarray:
        """All entries ``M[., y]``; equivalent to ``n`` lookups."""
        self._check_index(y)
        t = self.t
        self.max_scan = max(self.max_scan, t)
        with np.errstate(over="ignore"):
            return self._reduce(self.lazy[:, y] + self.buf_j[:, :t] @ self.buf_i[:t, y])

    def row(self, x: int) -> np.ndarray:
        """All entries ``M[x, .]``; equivalent to ``n`` lookups."""
        self._check_index(x)
        t = self.t
        self.max_scan = max(self.max_scan, t)
        with np.errstate(over="ignore"):
            return self._reduce(self.lazy[x, :] + self.buf_j[x, :t] @ self.buf_i[:t, :])

    def dense(self) -> np.ndarray:
        """The full logical matrix."""
        with np.errstate(over="ignore"):
            return self._reduce(self.lazy + self.buf_j[:, : self.t] @ self.buf_i[: self.t, :])
