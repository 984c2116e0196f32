import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy import isprime

from dyntc.dag_counter import CycleError, DagCounter, random_prime
from oracles import bfs_closure, dag_path_counts

DIAMOND = [(0, 1), (0, 2), (1, 3), (2, 3)]


def counts(dc):
    return [[dc.count(x, y) for y in range(dc.n)] for x in range(dc.n)]


def test_prime_range_and_determinism():
    p = random_prime(5)
    assert isprime(p) and 2**61 <= p < 2**62
    assert p == random_prime(5)
    assert DagCounter(3, seed=5).prime == p


def test_rejects_composite():
    with pytest.raises(ValueError):
        DagCounter(3, prime=15)


def test_single_edge():
    dc = DagCounter(3, seed=0)
    dc.insert_edge(0, 1)
    assert dc.count(0, 1) == 1 and dc.query(0, 1)
    assert dc.query(2, 2) and not dc.query(1, 0)


def test_diamond():
    dc = DagCounter(4, seed=0)
    for u, v in DIAMOND:
        dc.insert_edge(u, v)
    assert dc.count(0, 3) == 2
    dc.delete_edge(1, 3)
    assert dc.count(0, 3) == 1


def test_chain():
    n = 9
    dc = DagCounter(n, seed=1)
    for v in range(n - 1):
        dc.insert_edge(v, v + 1)
    assert dc.count(0, n - 1) == 1


def test_delete_only_edge():
    dc = DagCounter(4, seed=0)
    dc.insert_edge(2, 3)
    dc.delete_edge(2, 3)
    assert counts(dc) == np.eye(4, dtype=int).tolist()


def test_errors():
    dc = DagCounter(4, seed=0)
    dc.insert_edge(0, 1)
    dc.insert_edge(1, 2)
    with pytest.raises(ValueError):
        dc.insert_edge(0, 1)
    with pytest.raises(CycleError) as info:
        dc.insert_edge(2, 0)
    assert info.value.path == [0, 1, 2]
    with pytest.raises(ValueError):
        dc.delete_edge(2, 3)
    with pytest.raises(IndexError):
        dc.query(0, 4)
    with pytest.raises(CycleError):
        dc.insert_edge(3, 3)


def test_two_path_false_negative_with_tiny_prime():
    dc = DagCounter(4, prime=2)
    for u, v in DIAMOND:
        dc.insert_edge(u, v)
    assert dag_path_counts(np.array([[0, 1, 1, 0], [0, 0, 0, 1], [0, 0, 0, 1], [0, 0, 0, 0]]))[0][3] == 2
    assert not dc.query(0, 3)


def random_dag(rng, n, p):
    perm = rng.permutation(n)
    return np.triu(rng.random((n, n)) < p, 1)[np.ix_(perm, perm)]


@given(st.integers(0, 2**32 - 1), st.integers(1, 9), st.sampled_from([0.0, 0.5, 1.0]))
def test_counts_mod_prime(seed, n, eps):
    rng = np.random.default_rng(seed)
    adj = random_dag(rng, n, 0.4)
    dc = DagCounter(n, epsilon=eps, seed=seed)
    dc.init([tuple(int(v) for v in e) for e in np.argwhere(adj)])
    want = dag_path_counts(adj)
    assert counts(dc) == [[c % dc.prime for c in row] for row in want]
    reach = bfs_closure(adj)
    assert all(dc.query(x, y) == reach[x, y] for x in range(n) for y in range(n))


@given(st.integers(0, 2**32 - 1), st.integers(2, 10))
def test_insert_delete_inverse(seed, n):
    rng = np.random.default_rng(seed)
    adj = random_dag(rng, n, 0.3)
    dc = DagCounter(n, seed=seed)
    dc.init([tuple(int(v) for v in e) for e in np.argwhere(adj)])
    before = dc.matrix.dense().copy()
    free = [tuple(int(v) for v in e) for e in np.argwhere(random_dag(rng, n, 1.0) & ~adj)]
    added = []
    for e in free:
        try:
            dc.insert_edge(*e)
            added.append(e)
        except CycleError:
            pass
    for e in reversed(added):
        dc.delete_edge(*e)
    assert np.array_equal(dc.matrix.dense(), before)
