"""Lazily maintained polynomials over Boolean matrices.

``PolyDeg2`` keeps a sum of two-factor products with per-term witness
counters that only count witnesses whose entries were revealed by a row or
column operation. ``PolyK`` handles longer products by chaining degree-2
structures from both ends of each term.

A variable is addressed by ``(term, position)``, both 0-based. Row and
column indices are 0-based as well.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from . import _bank as B
from . import _kernels as K
from .boolmat import BoolMatrix

_I64 = np.int64


class WorkCounter:
    """Shared tally of inner-loop triple visits."""

    __slots__ = ("units",)

    def __init__(self) -> None:
        self.units = 0

    def reset(self) -> int:
        u, self.units = self.units, 0
        return u


def as_array(m, n: int) -> np.ndarray:
    a = m.array if isinstance(m, BoolMatrix) else np.asarray(m, dtype=bool)
    if a.shape != (n, n):
        raise ValueError(f"expected shape {(n, n)}, got {a.shape}")
    return a


def _count_matmul(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return np.rint(x.astype(np.float64) @ y.astype(np.float64)).astype(_I64)


class PolyDeg2:
    """Sum of ``h`` products ``x1[a] @ x2[a]`` with one-sided-error lookups."""

    def __init__(
        self, n: int, h: int, counter: WorkCounter | None = None, restore: bool = True
    ) -> None:
        if n < 1 or h < 1:
            raise ValueError("need n >= 1 and h >= 1")
        self.n, self.h = n, h
        # when a reset drops a pair that still has an uncounted witness,
        # re-count that witness (see the decisions ledger)
        self.restore = restore
        self._lost = np.zeros((n * n, 2), dtype=_I64)
        self.counter = counter if counter is not None else WorkCounter()
        self.time = 0
        self.x1 = np.zeros((h, n, n), dtype=np.bool_)
        self.x2 = np.zeros((h, n, n), dtype=np.bool_)
        self.lf1 = np.zeros((h, n, n), dtype=_I64)
        self.lf2 = np.zeros((h, n, n), dtype=_I64)
        self.prod = np.zeros((h, n, n), dtype=_I64)
        self.s = np.zeros((n, n), dtype=_I64)
        self.lr1 = np.zeros((h, n), dtype=_I64)
        self.lc1 = np.zeros((h, n), dtype=_I64)
        self.lr2 = np.zeros((h, n), dtype=_I64)
        self.lc2 = np.zeros((h, n), dtype=_I64)
        self.order_r1 = np.tile(np.arange(n, dtype=_I64), (h, 1))
        self.order_c2 = np.tile(np.arange(n, dtype=_I64), (h, 1))
        self.phi_up = np.zeros(h, dtype=_I64)
        self.phi_down = np.zeros(h, dtype=_I64)
        self._args = (self.x1, self.x2, self.lf1, self.lf2, self.lr1, self.lc1,
                      self.lr2, self.lc2, self.prod, self.s)

    # public API ---------------------------------------------------------

    def init(self, pairs: Sequence[tuple]) -> None:
        """Assign every variable; ``pairs[a]`` is the two factors of term ``a``."""
        if len(pairs) != self.h:
            raise ValueError(f"expected {self.h} factor pairs, got {len(pairs)}")
        self._init([(as_array(p, self.n), as_array(q, self.n)) for p, q in pairs])

    def set_row(self, i: int, delta, var: tuple[int, int]) -> None:
        a, side = self._check_var(var)
        self._check_index(i)
        self._row(i, np.ascontiguousarray(as_array(delta, self.n)[i]), a, side)

    def set_col(self, i: int, delta, var: tuple[int, int]) -> None:
        a, side = self._check_var(var)
        self._check_index(i)
        self._col(i, np.ascontiguousarray(as_array(delta, self.n)[:, i]), a, side)

    def lazy_set(self, delta, var: tuple[int, int]) -> None:
        a, side = self._check_var(var)
        self._lazy(np.ascontiguousarray(as_array(delta, self.n)), a, side)

    def reset(self, delta, var: tuple[int, int]) -> None:
        a, side = self._check_var(var)
        d = np.ascontiguousarray(as_array(delta, self.n))
        if np.any(d & ~(self.x2 if side else self.x1)[a]):
            raise ValueError("reset delta has ones outside the variable")
        self._reset(d, a, side)

    def lookup(self) -> BoolMatrix:
        return BoolMatrix(self.s > 0)

    def value(self, var: tuple[int, int]) -> BoolMatrix:
        a, side = self._check_var(var)
        return BoolMatrix((self.x2 if side else self.x1)[a])

    def exact(self) -> np.ndarray:
        """The true polynomial value, by direct multiplication."""
        out = np.zeros((self.n, self.n), dtype=bool)
        for a in range(self.h):
            out |= _count_matmul(self.x1[a], self.x2[a]) > 0
        return out

    def potential(self, a: int) -> int:
        return int(self.prod[a].sum())

    # internals used by the higher-level structures ------------------------

    def lookup_array(self) -> np.ndarray:
        return self.s > 0

    def _check_var(self, var) -> tuple[int, int]:
        a, side = var
        if not (0 <= a < self.h and side in (0, 1)):
            raise IndexError(f"bad variable id {var!r}")
        return a, side

    def _check_index(self, i: int) -> None:
        if not 0 <= i < self.n:
            raise IndexError(f"index {i} out of range for n={self.n}")

    def _init(self, pairs) -> None:
        self.time += 1
        p = np.empty((self.h, self.n, self.n), dtype=np.bool_)
        q = np.empty_like(p)
        for a, (u, v) in enumerate(pairs):
            p[a] = u
            q[a] = v
        visits = K.init_terms(*self._args, p, q, self.time)
        self.phi_up += self.prod.sum(axis=(1, 2))
        self.counter.units += visits + 2 * self.h * self.n**2

    def _row(self, i: int, vec: np.ndarray, a: int, side: int) -> None:
        self.time += 1
        if side:
            vis, inc = K.row_right(*self._args, a, i, vec, self.time)
        else:
            vis, inc = K.row_left(*self._args, self.order_r1, a, i, vec, self.time)
        self.counter.units += vis
        self.phi_up[a] += inc

    def _col(self, i: int, vec: np.ndarray, a: int, side: int) -> None:
        self.time += 1
        if side:
            vis, inc = K.col_right(*self._args, self.order_c2, a, i, vec, self.time)
        else:
            vis, inc = K.col_left(*self._args, a, i, vec, self.time)
        self.counter.units += vis
        self.phi_up[a] += inc

    def _lazy(self, d: np.ndarray, a: int, side: int) -> None:
        self.time += 1
        if side:
            K.lazy_mat(self.x2, self.lf2, a, d, self.time)
        else:
            K.lazy_mat(self.x1, self.lf1, a, d, self.time)

    def _lazy_row(self, i: int, vec: np.ndarray, a: int, side: int) -> None:
        self.time += 1
        if side:
            K.lazy_row(self.x2, self.lf2, a, i, vec, self.time)
        else:
            K.lazy_row(self.x1, self.lf1, a, i, vec, self.time)

    def _lazy_col(self, i: int, vec: np.ndarray, a: int, side: int) -> None:
        self.time += 1
        if side:
            K.lazy_col(self.x2, self.lf2, a, i, vec, self.time)
        else:
            K.lazy_col(self.x1, self.lf1, a, i, vec, self.time)

    def _reset(self, d: np.ndarray, a: int, side: int) -> None:
        self.time += 1
        if side:
            vis, dec = K.reset_right(
                *self._args, self.order_r1, a, d, self.restore, self._lost, self.phi_up)
        else:
            vis, dec = K.reset_left(
                *self._args, self.order_c2, a, d, self.restore, self._lost, self.phi_up)
        self.counter.units += vis
        self.phi_down[a] += dec


class _Link:
    """Read-only view of one degree-2 link inside a ``PolyK``, for audits."""

    def __init__(self, poly: "PolyK", first: int, count: int, group: int) -> None:
        sl = slice(first, first + count)
        self.n, self.h = poly.n, count
        self.x1, self.x2 = poly._x1[sl], poly._x2[sl]
        self.lf1, self.lf2 = poly._lf1[sl], poly._lf2[sl]
        self.lr1, self.lc1 = poly._lr1[sl], poly._lc1[sl]
        self.lr2, self.lc2 = poly._lr2[sl], poly._lc2[sl]
        self.prod = poly._prod[sl]
        self.s = poly._s[group]
        self.phi_up = poly._phi[0, sl]
        self.phi_down = poly._phi[1, sl]

    def lookup_array(self) -> np.ndarray:
        return self.s > 0

    def exact(self) -> np.ndarray:
        out = np.zeros((self.n, self.n), dtype=bool)
        for a in range(self.h):
            out |= _count_matmul(self.x1[a], self.x2[a]) > 0
        return out

    def potential(self, a: int) -> int:
        return int(self.prod[a].sum())


class PolyK:
    """Sum of products of distinct variables, one term per entry of ``degrees``.

    Each term of degree ``k >= 2`` keeps prefix chains (the product of its
    first ``b`` factors, built right to left) and suffix chains (factors
    ``b+1..k``, built left to right) whose links are one-term degree-2
    structures. A top structure sums the ``k+1`` splits prefix times
    suffix. A degree-1 term enters the top structure as ``X @ I``. All
    links share stacked arrays so one compiled call runs a whole update.
    """

    def __init__(
        self,
        n: int,
        degrees: Sequence[int],
        counter: WorkCounter | None = None,
        restore: bool = True,
    ) -> None:
        if n < 1:
            raise ValueError("n must be positive")
        if not degrees or any(k < 1 for k in degrees):
            raise ValueError("need at least one term, each of degree >= 1")
        self.n = n
        self.degrees = tuple(int(k) for k in degrees)
        self.restore = restore
        self.counter = counter if counter is not None else WorkCounter()
        h, kmax = len(self.degrees), max(self.degrees)
        lid = np.full((h, kmax + 1, kmax), -1, dtype=_I64)
        rid = np.full((h, kmax + 1, kmax), -1, dtype=_I64)
        tops = np.full((h, kmax + 1), -1, dtype=_I64)
        links = 0
        for a, k in enumerate(self.degrees):
            if k == 1:
                continue
            for b in range(1, k + 1):
                for j in range(b):
                    lid[a, b, j] = links
                    links += 1
            for b in range(k):
                for j in range(k - b):
                    rid[a, b, j] = links
                    links += 1
        t = links
        for a, k in enumerate(self.degrees):
            for b in range(1 if k == 1 else k + 1):
                tops[a, b] = t
                t += 1
        self._links, self._terms = links, t
        self._lid, self._rid, self._tops = lid, rid, tops
        self._deg = np.array(self.degrees, dtype=_I64)
        self._vals = np.zeros((h, kmax, n, n), dtype=np.bool_)
        grp = np.empty(t, dtype=_I64)
        grp[:links] = np.arange(links)
        grp[links:] = links
        z3 = lambda dt: np.zeros((t, n, n), dtype=dt)  # noqa: E731
        z2 = lambda: np.zeros((t, n), dtype=_I64)  # noqa: E731
        self._x1, self._x2 = z3(np.bool_), z3(np.bool_)
        self._lf1, self._lf2, self._prod = z3(_I64), z3(_I64), z3(_I64)
        self._lr1, self._lc1, self._lr2, self._lc2 = z2(), z2(), z2(), z2()
        self._s = np.zeros((links + 1, n, n), dtype=_I64)
        order = np.tile(np.arange(n, dtype=_I64), (t, 1))
        self._phi = np.zeros((2, t), dtype=_I64)
        self._state = (
            self._x1, self._x2, self._lf1, self._lf2, self._lr1, self._lc1, self._lr2,
            self._lc2, self._prod, self._s, order, order.copy(), np.zeros(links + 1, dtype=_I64),
            self._phi, grp, np.zeros((n * n, 2), dtype=_I64),
        )
        self._topo = (self._lid, self._rid, self._tops, self._deg, self._vals)

    # public API ---------------------------------------------------------

    def init(self, values: Sequence[Sequence]) -> None:
        """``values[a][c]`` is the new value of factor ``c`` of term ``a``."""
        if len(values) != len(self.degrees) or any(
            len(v) != k for v, k in zip(values, self.degrees)
        ):
            raise ValueError("values do not match the term degrees")
        self._init([[as_array(m, self.n) for m in v] for v in values])

    def set_row(self, i: int, delta, var: tuple[int, int]) -> None:
        a, c = self._check_var(var)
        self._check_index(i)
        self._row(i, np.ascontiguousarray(as_array(delta, self.n)[i]), a, c)

    def set_col(self, i: int, delta, var: tuple[int, int]) -> None:
        a, c = self._check_var(var)
        self._check_index(i)
        self._col(i, np.ascontiguousarray(as_array(delta, self.n)[:, i]), a, c)

    def lazy_set(self, delta, var: tuple[int, int]) -> None:
        a, c = self._check_var(var)
        self._lazy(np.ascontiguousarray(as_array(delta, self.n)), a, c)

    def reset(self, delta, var: tuple[int, int]) -> None:
        a, c = self._check_var(var)
        d = np.ascontiguousarray(as_array(delta, self.n))
        if np.any(d & ~self._vals[a, c]):
            raise ValueError("reset delta has ones outside the variable")
        self._reset(d, a, c)

    def lookup(self) -> BoolMatrix:
        return BoolMatrix(self.lookup_array())

    def value(self, var: tuple[int, int]) -> BoolMatrix:
        a, c = self._check_var(var)
        return BoolMatrix(self._vals[a, c])

    def exact(self) -> np.ndarray:
        out = np.zeros((self.n, self.n), dtype=bool)
        for a, k in enumerate(self.degrees):
            acc = self._vals[a, 0]
            for c in range(1, k):
                acc = _count_matmul(acc, self._vals[a, c]) > 0
            out |= acc
        return out

    def structures(self):
        """Every degree-2 link inside, for audits."""
        for g in range(self._links):
            yield _Link(self, g, 1, g)
        yield _Link(self, self._links, self._terms - self._links, self._links)

    # internals ------------------------------------------------------------

    def lookup_array(self) -> np.ndarray:
        return self._s[-1] > 0

    def var_array(self, a: int, c: int) -> np.ndarray:
        return self._vals[a, c]

    def _check_var(self, var) -> tuple[int, int]:
        a, c = var
        if not (0 <= a < len(self.degrees) and 0 <= c < self.degrees[a]):
            raise IndexError(f"bad variable id {var!r}")
        return a, c

    def _check_index(self, i: int) -> None:
        if not 0 <= i < self.n:
            raise IndexError(f"index {i} out of range for n={self.n}")

    def _init(self, values) -> None:
        for a, k in enumerate(self.degrees):
            for c in range(k):
                self._vals[a, c] = values[a][c]
        self._reinit()

    def _reinit(self) -> None:
        # rebuild every link from the current variable values
        self.counter.units += B.init(self._state, *self._topo)

    def _row(self, i: int, vec: np.ndarray, a: int, c0: int) -> None:
        self.counter.units += B.row(self._state, *self._topo, a, c0, i, vec)

    def _col(self, i: int, vec: np.ndarray, a: int, c0: int) -> None:
        self.counter.units += B.col(self._state, *self._topo, a, c0, i, vec)

    def _lazy(self, d: np.ndarray, a: int, c0: int) -> None:
        B.lazy(self._state, *self._topo, a, c0, d)

    def _reset(self, d: np.ndarray, a: int, c0: int) -> None:
        if d.any():
            self.counter.units += B.reset(self._state, *self._topo, a, c0, d, self.restore)


def audit_structure(ps) -> list[str]:
    """Problems with a degree-2 structure's witness bookkeeping.

    ``ps`` is a ``PolyDeg2`` or a link from ``PolyK.structures()``. Each
    counter must equal the number of witnesses passing the timestamp
    filter, the aggregate must equal the counter sum, and each potential
    must stay within ``n^3``.
    """
    out = []
    n = ps.n
    total = np.zeros((n, n), dtype=_I64)
    for a in range(ps.x1.shape[0]):
        flip = np.maximum(ps.lf1[a][:, :, None], ps.lf2[a][None, :, :])
        stamp = np.maximum(
            np.maximum(ps.lr1[a][:, None, None], ps.lc1[a][None, :, None]),
            np.maximum(ps.lr2[a][None, :, None], ps.lc2[a][None, None, :]),
        )
        live = ps.x1[a][:, :, None] & ps.x2[a][None, :, :] & (flip <= stamp)
        want = live.sum(axis=1)
        if not np.array_equal(want, ps.prod[a]):
            bad = np.argwhere(want != ps.prod[a])[0]
            out.append(f"term {a}: counter at {tuple(int(v) for v in bad)} is "
                       f"{int(ps.prod[a][tuple(bad)])}, expected {int(want[tuple(bad)])}")
        if ps.potential(a) > n**3:
            out.append(f"term {a}: potential {ps.potential(a)} exceeds n^3")
        total += ps.prod[a] > 0
    if not np.array_equal(total, ps.s):
        out.append("aggregate differs from the number of nonzero counters")
    return out
