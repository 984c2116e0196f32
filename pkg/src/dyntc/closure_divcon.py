"""Divide-and-conquer dynamic Kleene closure.

A node of size ``n`` splits its input into blocks ``A B / C D`` and keeps
the closure blocks ``E F / G H`` through twelve lazily maintained
polynomials and three child closures::

    P  = D*                 Q  = A + B P^2 C        E1 = Q*
    R  = D + C E1^2 B       H2 = R*
    F1 = E1^2 B P           G1 = P C E1^2           H1 = P C E1^2 B P
    E2 = E1 B H2^2 C E1     F2 = E1 B H2^2          G2 = H2^2 C E1
    E  = E1 + E2    F = F1 + F2    G = G1 + G2    H = H1 + H2

Row/column updates centered in the top half are propagated fully through
``Q, E1, F1, G1, H1, R`` and lazily into the rest. Updates centered in the
bottom half fully update ``P, R, H2, G2, F2, E2, Q`` and lazily the rest.
"""

from __future__ import annotations

import numpy as np

from .boolmat import BoolMatrix, closure_array, next_pow2
from .poly import PolyK, WorkCounter, as_array

_SPECS = {
    "Q": (("A",), ("B", "P", "P", "C")),
    "R": (("D",), ("C", "E1", "E1", "B")),
    "F1": (("E1", "E1", "B", "P"),),
    "G1": (("P", "C", "E1", "E1"),),
    "H1": (("P", "C", "E1", "E1", "B", "P"),),
    "E2": (("E1", "B", "H2", "H2", "C", "E1"),),
    "F2": (("E1", "B", "H2", "H2"),),
    "G2": (("H2", "H2", "C", "E1"),),
    "E": (("E1",), ("E2",)),
    "F": (("F1",), ("F2",)),
    "G": (("G1",), ("G2",)),
    "H": (("H1",), ("H2",)),
}
_DERIVED = ("F1", "G1", "H1", "E2", "F2", "G2", "E", "F", "G", "H")
_ON_INPUT = ("Q", "R", "F1", "G1", "H1", "E2", "F2", "G2")


def _slabs(d: np.ndarray, i: int) -> np.ndarray:
    out = np.zeros_like(d)
    out[i] = d[i]
    out[:, i] = d[:, i]
    return out


class _Node:
    __slots__ = ("size", "m", "x", "y", "blocks", "polys", "occ", "kids", "counter",
                 "leaf", "repair", "dirty")

    def __init__(self, size: int, counter: WorkCounter, leaf: int, repair: bool) -> None:
        self.size = size
        self.counter = counter
        self.repair = repair
        # set by a nonempty lazy insert, cleared by init
        self.dirty = False
        self.x = np.zeros((size, size), dtype=bool)
        self.y = np.eye(size, dtype=bool)
        self.leaf = size <= leaf
        if self.leaf:
            return
        m = self.m = size // 2
        self.blocks = {}
        self._split()
        self.kids = {name: _Node(m, counter, leaf, repair) for name in ("P", "E1", "H2")}
        self.polys = {}
        self.occ = {}
        for name, terms in _SPECS.items():
            self.polys[name] = PolyK(m, [len(t) for t in terms], counter, repair)
            occ: dict[str, list] = {}
            for a, term in enumerate(terms):
                for c, var in enumerate(term):
                    occ.setdefault(var, []).append((a, c))
            self.occ[name] = occ

    # values feeding the polynomials ----------------------------------------

    def _split(self) -> None:
        m, x = self.m, self.x
        b = self.blocks
        b["A"] = np.ascontiguousarray(x[:m, :m])
        b["B"] = np.ascontiguousarray(x[:m, m:])
        b["C"] = np.ascontiguousarray(x[m:, :m])
        b["D"] = np.ascontiguousarray(x[m:, m:])

    def _source(self, var: str) -> np.ndarray:
        if var in self.blocks:
            return self.blocks[var]
        if var in self.kids:
            return self.kids[var].y
        return self.polys[var].lookup_array()

    def _assemble(self) -> None:
        p = self.polys
        self.y = np.block([
            [p["E"].lookup_array(), p["F"].lookup_array()],
            [p["G"].lookup_array(), p["H"].lookup_array()],
        ])

    # polynomial shortcuts ----------------------------------------------------

    def _init_poly(self, name: str) -> None:
        poly = self.polys[name]
        vals = poly._vals
        for a, term in enumerate(_SPECS[name]):
            for c, var in enumerate(term):
                vals[a, c] = self._source(var)
        poly._reinit()

    def _set_poly(self, name: str, i: int, names) -> None:
        poly, occ = self.polys[name], self.occ[name]
        for var in names:
            places = occ[var]
            added = self._source(var) & ~poly.var_array(*places[0])
            row = added[i].copy()
            col = added[:, i].copy()
            added[i] = False
            added[:, i] = False
            rest = added if added.any() else None
            for a, c in places:
                if rest is not None:
                    poly._lazy(rest, a, c)
                poly._row(i, row, a, c)
                poly._col(i, col, a, c)

    def _lazy_poly(self, name: str, names) -> None:
        poly, occ = self.polys[name], self.occ[name]
        for var in names:
            places = occ.get(var)
            if not places:
                continue
            added = self._source(var) & ~poly.var_array(*places[0])
            if added.any():
                for a, c in places:
                    poly._lazy(added, a, c)

    def _reset_poly(self, name: str) -> None:
        poly, occ = self.polys[name], self.occ[name]
        for var, places in occ.items():
            gone = poly.var_array(*places[0]) & ~self._source(var)
            if gone.any():
                for a, c in places:
                    poly._reset(gone, a, c)

    def _set_kid(self, name: str, i: int, src: np.ndarray) -> None:
        kid = self.kids[name]
        if self.repair and kid.dirty:
            # lazy inserts hidden inside the child would never be revealed
            kid.init_star(src)
            return
        added = src & ~kid.x
        slab = _slabs(added, i)
        rest = added & ~slab
        if rest.any():
            kid.lazy_set_star(rest)
        kid.set_star(i, slab)

    def _lazy_kid(self, name: str, src: np.ndarray) -> None:
        kid = self.kids[name]
        added = src & ~kid.x
        if added.any():
            kid.lazy_set_star(added)

    def _reset_kid(self, name: str, src: np.ndarray) -> None:
        kid = self.kids[name]
        gone = kid.x & ~src
        if gone.any():
            kid.reset_star(gone)

    # closure operations ------------------------------------------------------

    def init_star(self, z: np.ndarray) -> None:
        self.x = np.array(z, dtype=bool)
        self.dirty = False
        if self.leaf:
            self._direct()
            return
        self._split()
        self.kids["P"].init_star(self.blocks["D"])
        self._init_poly("Q")
        self.kids["E1"].init_star(self.polys["Q"].lookup_array())
        self._init_poly("R")
        self.kids["H2"].init_star(self.polys["R"].lookup_array())
        for name in _DERIVED:
            self._init_poly(name)
        self._assemble()

    def set_star(self, i: int, d: np.ndarray) -> None:
        """``d`` must already be zero outside row and column ``i``."""
        self.x |= d
        if self.leaf:
            self._direct()
            return
        self._split()
        m = self.m
        if i < m:
            self._set_poly("Q", i, ("A", "B", "C"))
            self._set_kid("E1", i, self.polys["Q"].lookup_array())
            self._set_poly("F1", i, ("E1", "B"))
            self._set_poly("G1", i, ("C", "E1"))
            self._set_poly("H1", i, ("C", "E1", "B"))
            self._set_poly("R", i, ("C", "E1", "B"))
            self._lazy_kid("H2", self.polys["R"].lookup_array())
            self._lazy_poly("G2", ("C", "E1"))
            self._lazy_poly("F2", ("E1", "B"))
            self._lazy_poly("E2", ("E1", "B", "C"))
        else:
            i -= m
            self._set_kid("P", i, self.blocks["D"])
            self._set_poly("R", i, ("B", "C", "D"))
            self._set_kid("H2", i, self.polys["R"].lookup_array())
            self._set_poly("G2", i, ("H2", "C"))
            self._set_poly("F2", i, ("B", "H2"))
            self._set_poly("E2", i, ("B", "H2", "C"))
            self._set_poly("Q", i, ("B", "P", "C"))
            self._lazy_kid("E1", self.polys["Q"].lookup_array())
            self._lazy_poly("F1", ("B", "P"))
            self._lazy_poly("G1", ("P", "C"))
            self._lazy_poly("H1", ("B", "P", "C"))
        for name in ("E", "F", "G", "H"):
            self._init_poly(name)
        self._assemble()

    def lazy_set_star(self, d: np.ndarray) -> None:
        if (d & ~self.x).any():
            self.dirty = True
        self.x |= d
        if self.leaf:
            return
        self._split()
        for name in _ON_INPUT:
            self._lazy_poly(name, ("A", "B", "C", "D"))
        self._lazy_kid("P", self.blocks["D"])

    def reset_star(self, d: np.ndarray) -> None:
        self.x &= ~d
        if self.leaf:
            self._direct()
            return
        self._split()
        self._reset_kid("P", self.blocks["D"])
        self._reset_poly("Q")
        self._reset_kid("E1", self.polys["Q"].lookup_array())
        self._reset_poly("R")
        self._reset_kid("H2", self.polys["R"].lookup_array())
        for name in _DERIVED:
            self._reset_poly(name)
        self._assemble()

    def _direct(self) -> None:
        if self.size > 1:
            self.counter.units += self.size ** 3
            self.y = closure_array(self.x)

    def walk(self):
        yield self
        if not self.leaf:
            for kid in self.kids.values():
                yield from kid.walk()


class DivConClosure:
    """Dynamic closure over an ``n``-vertex input, padded to a power of two."""

    def __init__(
        self,
        n: int,
        counter: WorkCounter | None = None,
        leaf: int = 2,
        repair: bool = True,
    ) -> None:
        if n < 1:
            raise ValueError("n must be positive")
        if leaf < 1:
            raise ValueError("leaf must be positive")
        self.n = n
        self.size = next_pow2(n)
        self.counter = counter if counter is not None else WorkCounter()
        self.root = _Node(self.size, self.counter, leaf, repair)

    def _pad(self, m) -> np.ndarray:
        a = as_array(m, self.n)
        out = np.zeros((self.size, self.size), dtype=bool)
        out[: self.n, : self.n] = a
        return out

    def _check_index(self, i: int) -> None:
        if not 0 <= i < self.n:
            raise IndexError(f"index {i} out of range for n={self.n}")

    @property
    def x(self) -> BoolMatrix:
        return BoolMatrix(self.root.x[: self.n, : self.n])

    def closure(self) -> BoolMatrix:
        return BoolMatrix(self.root.y[: self.n, : self.n])

    def init_star(self, z) -> None:
        self.root.init_star(self._pad(z))

    def set_star(self, i: int, delta) -> None:
        self._check_index(i)
        self.root.set_star(i, _slabs(self._pad(delta), i))

    def lazy_set_star(self, delta) -> None:
        self.root.lazy_set_star(self._pad(delta))

    def reset_star(self, delta) -> None:
        d = self._pad(delta)
        if np.any(d & ~self.root.x):
            raise ValueError("reset delta has ones outside the input")
        if d.any():
            self.root.reset_star(d)

    def lookup_star(self, x: int, y: int) -> bool:
        self._check_index(x)
        self._check_index(y)
        return bool(self.root.y[x, y])

    def polys(self):
        for node in self.root.walk():
            if not node.leaf:
                yield from node.polys.values()


def delta_props_check(x, dx, i: int | None = None) -> tuple[bool, bool]:
    """Whether ``(x+dx)* - x*`` is i-transitive and i-complete w.r.t. ``x*``.

    Equalities are tested modulo ``x*``: ``a ~ b`` iff ``x* | a == x* | b``.
    ``i`` defaults to the unique center of ``dx``; a zero ``dx`` is vacuous.
    """
    xa = _arr(x)
    n = xa.shape[0]
    da = as_array(dx, n)
    if i is None:
        i = _center(da)
        if i is None:
            return True, True
    c = closure_array(xa)
    e = closure_array(xa | da) & ~c
    rows, cols = _row_col(e, i)
    same = lambda a, b: np.array_equal(c | a, c | b)
    ok_t = same(rows, _mul(rows, c)) and same(cols, _mul(c, cols))
    ok_c = same(e, _mul(cols, rows) | _mul(c, rows) | _mul(cols, c))
    return ok_t, ok_c


def squaring_identity(x, dx, i: int) -> bool:
    """``x + dx == (x + I + J)^2`` with ``I``/``J`` the row/column ``i`` slabs of ``dx``."""
    xa = _arr(x)
    da = as_array(dx, xa.shape[0])
    rows, cols = _row_col(da, i)
    return bool(np.array_equal(xa | da, _square(xa | rows | cols)))


def _arr(x) -> np.ndarray:
    return x.array if isinstance(x, BoolMatrix) else np.asarray(x, dtype=bool)


def _center(da: np.ndarray) -> int | None:
    hit = np.flatnonzero(da.any(axis=1) | da.any(axis=0))
    if hit.size == 0:
        return None
    for i in hit:
        rows, cols = _row_col(da, int(i))
        if np.array_equal(da, rows | cols):
            return int(i)
    raise ValueError("update is not centered on a single index")


def _row_col(a: np.ndarray, i: int) -> tuple[np.ndarray, np.ndarray]:
    rows = np.zeros_like(a)
    cols = np.zeros_like(a)
    rows[i] = a[i]
    cols[:, i] = a[:, i]
    return rows, cols


def _mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a.astype(np.float32) @ b.astype(np.float32)) > 0


def _square(a: np.ndarray) -> np.ndarray:
    return _mul(a, a)
