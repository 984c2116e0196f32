"""Dense Boolean matrices, slab extraction and static closure oracles.

Indices are 0-based at this level. The graph frontend and trace format
translate from the 1-based vertex ids users see.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np


class BoolMatrix:
    """Square Boolean matrix backed by a numpy ``bool`` array."""

    __slots__ = ("_a",)

    def __init__(self, data) -> None:
        a = np.array(data, dtype=bool, copy=True)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise ValueError(f"expected a non-empty square matrix, got shape {a.shape}")
        self._a = a

    @classmethod
    def zeros(cls, n: int) -> "BoolMatrix":
        return cls(np.zeros((n, n), dtype=bool))

    @classmethod
    def identity(cls, n: int) -> "BoolMatrix":
        return cls(np.eye(n, dtype=bool))

    @classmethod
    def ones(cls, n: int) -> "BoolMatrix":
        return cls(np.ones((n, n), dtype=bool))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "BoolMatrix":
        a = np.zeros((n, n), dtype=bool)
        for x, y in edges:
            a[x, y] = True
        return cls(a)

    @property
    def n(self) -> int:
        return self._a.shape[0]

    @property
    def array(self) -> np.ndarray:
        """Read-only view of the entries."""
        v = self._a.view()
        v.flags.writeable = False
        return v

    def copy(self) -> "BoolMatrix":
        return BoolMatrix(self._a)

    def edges(self) -> list[tuple[int, int]]:
        return [(int(x), int(y)) for x, y in zip(*np.nonzero(self._a))]

    def count(self) -> int:
        return int(self._a.sum())

    def issubset(self, other: "BoolMatrix") -> bool:
        _check_dims(self, other)
        return not np.any(self._a & ~other._a)

    def __getitem__(self, idx):
        return self._a[idx]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BoolMatrix):
            return NotImplemented
        return self._a.shape == other._a.shape and bool(np.array_equal(self._a, other._a))

    def __hash__(self):
        return hash((self.n, self._a.tobytes()))

    def __repr__(self) -> str:
        return f"BoolMatrix(n={self.n}, ones={self.count()})"

    def to_text(self) -> str:
        rows = ["".join("1" if v else "0" for v in row) for row in self._a]
        return "\n".join([str(self.n), *rows]) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "BoolMatrix":
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty matrix text")
        n = int(lines[0])
        rows = lines[1:]
        if len(rows) != n or any(len(r) != n or set(r) - {"0", "1"} for r in rows):
            raise ValueError(f"malformed matrix text for n={n}")
        return cls([[c == "1" for c in r] for r in rows])


def _check_dims(x: BoolMatrix, y: BoolMatrix) -> None:
    if x.n != y.n:
        raise ValueError(f"dimension mismatch: {x.n} vs {y.n}")


def _check_index(x: BoolMatrix, i: int) -> None:
    if not 0 <= i < x.n:
        raise IndexError(f"index {i} out of range for n={x.n}")


def mul_arrays(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    # float32 BLAS is exact for witness counts below 2**24
    return (x.astype(np.float32) @ y.astype(np.float32)) > 0


def bool_mul(x: BoolMatrix, y: BoolMatrix) -> BoolMatrix:
    _check_dims(x, y)
    return BoolMatrix(mul_arrays(x._a, y._a))


def bool_add(x: BoolMatrix, y: BoolMatrix) -> BoolMatrix:
    _check_dims(x, y)
    return BoolMatrix(x._a | y._a)


def bool_sub(x: BoolMatrix, dx: BoolMatrix) -> BoolMatrix:
    """Entrywise ``x AND NOT dx``; ``dx`` must be contained in ``x``."""
    _check_dims(x, dx)
    if np.any(dx._a & ~x._a):
        raise ValueError("subtrahend has ones outside the minuend")
    return BoolMatrix(x._a & ~dx._a)


def row_slab(x: BoolMatrix, i: int) -> BoolMatrix:
    _check_index(x, i)
    out = np.zeros_like(x._a)
    out[i] = x._a[i]
    return BoolMatrix(out)


def col_slab(x: BoolMatrix, i: int) -> BoolMatrix:
    _check_index(x, i)
    out = np.zeros_like(x._a)
    out[:, i] = x._a[:, i]
    return BoolMatrix(out)


def closure_array(a: np.ndarray) -> np.ndarray:
    """Reflexive-transitive closure by Floyd-Warshall style pivoting."""
    r = np.array(a, dtype=bool, copy=True)
    np.fill_diagonal(r, True)
    for k in range(r.shape[0]):
        r |= np.outer(r[:, k], r[k])
    return r


def closure_oracle(x: BoolMatrix) -> BoolMatrix:
    return BoolMatrix(closure_array(x._a))


def next_pow2(n: int) -> int:
    p = 1
    while p < n:
        p *= 2
    return p


def _munro_blocks(a: np.ndarray, form: str) -> np.ndarray:
    n = a.shape[0]
    if n == 1:
        return np.ones((1, 1), dtype=bool)
    m = n // 2
    A, B, C, D = a[:m, :m], a[:m, m:], a[m:, :m], a[m:, m:]
    mul = mul_arrays
    if form == "F":
        ds = _munro_blocks(D, form)
        e = _munro_blocks(A | mul(mul(B, ds), C), form)
        f = mul(mul(e, B), ds)
        g = mul(mul(ds, C), e)
        h = ds | mul(mul(g, B), ds)
    else:
        p = _munro_blocks(D, form)
        p2 = mul(p, p)
        e1 = _munro_blocks(A | mul(mul(B, p2), C), form)
        e12 = mul(e1, e1)
        h2 = _munro_blocks(D | mul(mul(C, e12), B), form)
        h22 = mul(h2, h2)
        e = e1 | mul(mul(mul(e1, B), mul(h22, C)), e1)
        f = mul(mul(e12, B), p) | mul(mul(e1, B), h22)
        g = mul(mul(p, C), e12) | mul(mul(h22, C), e1)
        h = mul(mul(mul(p, C), e12), mul(B, p)) | h2
    return np.block([[e, f], [g, h]])


def closure_munro(x: BoolMatrix, form: str = "F") -> BoolMatrix:
    """Recursive block closure.

    ``form="F"`` uses E = (A+BD*C)*, F = EBD*, G = D*CE, H = D*+D*CEBD*.
    ``form="H"`` uses the twelve squared-variable blocks maintained by the
    divide-and-conquer structure. Inputs are zero-padded to a power of two.
    """
    if form not in ("F", "H"):
        raise ValueError(f"unknown form {form!r}")
    n = x.n
    p = next_pow2(n)
    a = np.zeros((p, p), dtype=bool)
    a[:n, :n] = x._a
    return BoolMatrix(_munro_blocks(a, form)[:n, :n])


def read_matrix(path) -> BoolMatrix:
    with open(path) as fh:
        return BoolMatrix.from_text(fh.read())


def write_matrix(x: BoolMatrix, path) -> None:
    with open(path, "w") as fh:
        fh.write(x.to_text())
