import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import mat
from drivers import apply_closure_op, closure_sequence
from dyntc.boolmat import closure_array, closure_munro, BoolMatrix
from dyntc.closure_divcon import DivConClosure, delta_props_check, squaring_identity
from dyntc import closure_log
from dyntc.closure_log import LogClosure
from dyntc.poly import PolyK
from oracles import bfs_closure, bounded_reach

BACKENDS = [LogClosure, DivConClosure]


@pytest.fixture(params=BACKENDS, ids=["log", "divcon"])
def cls(request):
    return request.param


def exact(c, x):
    return np.array_equal(c.closure().array, bfs_closure(x))


def test_init_empty(cls):
    c = cls(8)
    c.init_star(np.zeros((8, 8)))
    assert all(c.lookup_star(x, y) == (x == y) for x in range(8) for y in range(8))


def test_init_cycle_is_full(cls):
    n = 8
    x = np.roll(np.eye(n, dtype=bool), 1, axis=1)
    c = cls(n)
    c.init_star(x)
    assert c.closure().array.all()


def test_init_chain_upper_triangular(cls):
    n = 8
    x = np.eye(n, k=1, dtype=bool)
    c = cls(n)
    c.init_star(x)
    assert np.array_equal(c.closure().array, np.triu(np.ones((n, n), dtype=bool)))


def test_star_insertion(cls):
    n = 8
    c = cls(n)
    c.init_star(np.zeros((n, n)))
    d = np.zeros((n, n), dtype=bool)
    d[3] = True
    c.set_star(3, d)
    assert all(c.lookup_star(3, y) for y in range(n))


def test_zero_updates_change_nothing(cls, rng):
    x = rng.random((8, 8)) < 0.2
    c = cls(8)
    c.init_star(x)
    before = c.closure()
    c.set_star(2, np.zeros((8, 8)))
    c.reset_star(np.zeros((8, 8)))
    assert c.closure() == before


def test_path_middle_edge_delete(cls):
    c = cls(4)
    x = mat(4, (0, 1), (1, 2))
    c.init_star(x)
    assert c.lookup_star(0, 2)
    c.reset_star(mat(4, (1, 2)))
    assert not c.lookup_star(0, 2)


def test_delete_everything(cls, rng):
    x = rng.random((8, 8)) < 0.3
    c = cls(8)
    c.init_star(x)
    c.reset_star(x)
    assert c.closure() == BoolMatrix.identity(8)


def test_incremental_path(cls):
    n = 8
    c = cls(n)
    c.init_star(np.zeros((n, n)))
    x = np.zeros((n, n), dtype=bool)
    for v in range(n - 1):
        d = mat(n, (v, v + 1))
        c.set_star(v, d)
        x |= d
        assert exact(c, x)


def test_alternating_halves_hamiltonian_path(cls):
    n = 8
    order = [0, 4, 1, 5, 2, 6, 3, 7]
    c = cls(n)
    c.init_star(np.zeros((n, n)))
    x = np.zeros((n, n), dtype=bool)
    for u, v in zip(order, order[1:]):
        d = mat(n, (u, v))
        c.set_star(v if len(x.nonzero()[0]) % 2 else u, d)
        x |= d
        assert exact(c, x)


def test_insert_then_delete_restores(cls, rng):
    n = 16
    x = rng.random((n, n)) < 0.1
    c = cls(n)
    c.init_star(x)
    before = c.closure()
    d = np.zeros((n, n), dtype=bool)
    d[5] = rng.random(n) < 0.3
    d[:, 5] |= rng.random(n) < 0.3
    d &= ~x
    c.set_star(5, d)
    c.reset_star(d)
    assert c.closure() == before


def test_errors(cls):
    c = cls(4)
    c.init_star(np.zeros((4, 4)))
    with pytest.raises(IndexError):
        c.set_star(4, np.zeros((4, 4)))
    with pytest.raises(IndexError):
        c.lookup_star(0, 4)
    with pytest.raises(ValueError):
        c.reset_star(mat(4, (0, 1)))
    with pytest.raises(ValueError):
        c.init_star(np.zeros((3, 3)))


def test_non_power_of_two(cls, rng):
    x = rng.random((6, 6)) < 0.25
    c = cls(6)
    c.init_star(x)
    assert exact(c, x)


def test_init_matches_munro_and_oracle(rng):
    for _ in range(50):
        x = rng.random((16, 16)) < 0.12
        c = DivConClosure(16)
        c.init_star(x)
        assert c.closure() == closure_munro(BoolMatrix(x), "H") == BoolMatrix(closure_array(x))


def test_divcon_blocks_match_closure(rng):
    x = rng.random((8, 8)) < 0.2
    c = DivConClosure(8)
    c.init_star(x)
    root = c.root
    blocks = np.block([[root.polys[k].lookup_array() for k in "EF"],
                       [root.polys[k].lookup_array() for k in "GH"]])
    assert np.array_equal(blocks, closure_array(x))


def test_log_level_bounds(rng):
    n = 16
    x = rng.random((n, n)) < 0.1
    c = LogClosure(n)
    c.init_star(x)
    for k, level in enumerate(c.levels, 1):
        got = level.lookup_array()
        assert not np.any(bounded_reach(x, 2**k) & ~got)
        assert not np.any(got & ~bounded_reach(x, 3**k))


class _SquareTower(LogClosure):
    """Same protocol with each level holding only the previous level and its square."""

    def __init__(self, n):
        super().__init__(n)
        self.levels = [PolyK(self.size, (1, 2), self.counter) for _ in self.levels]

    def init_star(self, z):
        self._x = self._pad(z)
        below = self._x
        for level in self.levels:
            level._init([[below], [below, below]])
            below = level.lookup_array()
        self._refresh(below)


def test_log_degree_three_needed(monkeypatch):
    ops = [(0, (7, 0)), (5, (6, 5)), (1, (1, 7)), (3, (2, 3)), (6, (0, 6)), (2, (5, 2))]

    def run(c):
        x = np.zeros((8, 8), dtype=bool)
        c.init_star(x)
        for i, e in ops:
            c.set_star(i, mat(8, e))
            x[e] = True
        return exact(c, x)

    assert run(LogClosure(8))
    monkeypatch.setattr(closure_log, "_OCCURRENCES", ((0, 0), (1, 0), (1, 1)))
    assert not run(_SquareTower(8))


def test_divcon_literal_misses_hidden_lazy():
    ops = [(3, (4, 3)), (4, (2, 4)), (1, (3, 1))]
    for repair, expect in ((True, True), (False, False)):
        c = DivConClosure(8, repair=repair)
        x = np.zeros((8, 8), dtype=bool)
        c.init_star(x)
        for i, e in ops:
            c.set_star(i, mat(8, e))
            x[e] = True
        assert exact(c, x) is expect


def test_divcon_leaf_one_exact():
    for kind, payload, x in closure_sequence(7, 16, 60):
        if kind == "init":
            c = DivConClosure(16, leaf=1)
        apply_closure_op(c, kind, payload)
        assert exact(c, x)


def test_divcon_lazy_never_over_reports(rng):
    n = 8
    c = DivConClosure(n)
    x = rng.random((n, n)) < 0.15
    c.init_star(x)
    for _ in range(30):
        d = rng.random((n, n)) < 0.05
        if rng.random() < 0.4:
            c.lazy_set_star(d)
        else:
            i = int(rng.integers(n))
            d[np.arange(n) != i] &= False
            c.set_star(i, d)
        x |= d
        assert not np.any(c.closure().array & ~closure_array(x))


def test_divcon_lazy_revealed_by_touching_set():
    n = 8
    c = DivConClosure(n)
    c.init_star(mat(n, (0, 1)))
    c.lazy_set_star(mat(n, (1, 2)))
    c.set_star(2, mat(n, (2, 3)))
    assert c.lookup_star(0, 3)


@given(st.integers(0, 2**32 - 1), st.sampled_from([2, 4, 5, 8, 16]), st.sampled_from(BACKENDS))
def test_exact_on_random_sequences(seed, n, backend):
    for kind, payload, x in closure_sequence(seed, n, 30):
        if kind == "init" and "c" not in locals():
            c = backend(n)
        apply_closure_op(c, kind, payload)
        assert exact(c, x)


def test_delta_props_examples(rng):
    assert delta_props_check(np.zeros((8, 8)), np.zeros((8, 8))) == (True, True)
    x = rng.random((8, 8)) < 0.2
    d = mat(8, (2, 5), (6, 2))
    assert delta_props_check(x, d) == (True, True)
    with pytest.raises(ValueError):
        delta_props_check(x, mat(8, (0, 1), (2, 3)))


@given(st.integers(0, 2**32 - 1))
def test_delta_properties(seed):
    r = np.random.default_rng(seed)
    n = 8
    x = r.random((n, n)) < 0.15
    i = int(r.integers(n))
    d = np.zeros((n, n), dtype=bool)
    d[i] = r.random(n) < 0.3
    d[:, i] |= r.random(n) < 0.3
    assert delta_props_check(x, d, i) == (True, True)
    c = closure_array(x)
    grown = closure_array(x | d) & ~c
    assert squaring_identity(c, grown, i)
