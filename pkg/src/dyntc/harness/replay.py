"""Trace replay with oracle cross-checks and inline audits."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from ..boolmat import closure_array
from ..graph import DynGraph
from ..poly import audit_structure
from .trace import Trace


@dataclass(frozen=True)
class BenchRecord:
    backend: str
    n: int
    op_index: int
    kind: str
    work_units: int
    ns: int
    result: str = ""

    def row(self) -> list:
        return [self.backend, self.n, self.op_index, self.kind, self.work_units, self.ns, self.result]


class MismatchError(AssertionError):
    """A backend answer differs from the oracle."""

    def __init__(self, backend: str, op_index: int, pair: tuple[int, int], expected: bool, got: bool):
        self.backend, self.op_index, self.pair = backend, op_index, pair
        self.expected, self.got = expected, got
        super().__init__(
            f"MISMATCH backend={backend} op={op_index} x={pair[0]} y={pair[1]} "
            f"expected={int(expected)} got={int(got)}"
        )


class AuditError(AssertionError):
    def __init__(self, backend: str, op_index: int, problems: list[str]):
        self.problems = problems
        head = problems[0] if problems else ""
        super().__init__(f"AUDIT backend={backend} op={op_index} problems={len(problems)} first={head}")


class _Oracle:
    def __init__(self, n: int) -> None:
        self.adj = np.zeros((n, n), dtype=bool)
        self._reach: np.ndarray | None = None

    def apply(self, op) -> None:
        if op.kind == "INIT":
            self.adj[:] = False
        for u, v in op.edges:
            self.adj[u - 1, v - 1] = op.kind != "DELETE"
        if op.kind != "QUERY":
            self._reach = None

    @property
    def reach(self) -> np.ndarray:
        if self._reach is None:
            self._reach = closure_array(self.adj)
        return self._reach


def _apply(g: DynGraph, op) -> str:
    if op.kind == "INIT":
        g.init(op.edges)
    elif op.kind == "INSERT":
        g.insert(op.vertex, op.edges)
    elif op.kind == "DELETE":
        g.delete(op.edges)
    else:
        return str(int(g.query(*op.pair)))
    return ""


def audit(g: DynGraph) -> list[str]:
    """Bookkeeping problems inside the backend, empty if all is well."""
    impl = g.impl
    if g.backend in ("log", "divcon"):
        return [p for poly in impl.polys() for s in poly.structures() for p in audit_structure(s)]
    if g.backend == "dag_counting":
        return _audit_counts(impl)
    return []


def _audit_counts(dc) -> list[str]:
    out = []
    m = dc.matrix
    if m.t > m.cap:
        out.append(f"buffer holds {m.t} updates, cap is {m.cap}")
    # eager mirror: path counts by dynamic programming over a topological order
    n = dc.n
    indeg = [0] * n
    for u in range(n):
        for v in dc.succ[u]:
            indeg[v] += 1
    order = [u for u in range(n) if indeg[u] == 0]
    for u in order:
        for v in dc.succ[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                order.append(v)
    p = dc.prime
    want = np.zeros((n, n), dtype=object)
    for s in range(n):
        want[s, s] = 1
        for u in order:
            if want[s, u]:
                for v in dc.succ[u]:
                    want[s, v] = (want[s, v] + want[s, u]) % p
    got = m.dense()
    if not np.array_equal(got, want):
        x, y = np.argwhere(got != want)[0]
        out.append(f"count at ({x + 1},{y + 1}) is {got[x, y]}, expected {want[x, y]}")
    return out


def replay(
    trace: Trace,
    backend: str,
    check: bool = False,
    sweep_stride: int = 0,
    audit_stride: int = 0,
    **graph_opts,
) -> Iterator[BenchRecord]:
    """Run ``trace`` on ``backend`` and yield one record per operation.

    With ``check``, every QUERY is compared with the oracle, and when
    ``sweep_stride > 0`` all pairs are compared after every
    ``sweep_stride``-th operation. ``audit_stride > 0`` runs the internal
    audit at that stride. The first failure raises.
    """
    g = DynGraph(trace.n, backend, **graph_opts)
    oracle = _Oracle(trace.n) if check else None
    for idx, op in enumerate(trace.ops):
        g.counter.reset()
        t0 = time.perf_counter_ns()
        result = _apply(g, op)
        ns = time.perf_counter_ns() - t0
        units = g.counter.reset()
        if oracle is not None:
            oracle.apply(op)
            if op.kind == "QUERY":
                u, v = op.pair
                want = bool(oracle.reach[u - 1, v - 1])
                if want != bool(int(result)):
                    raise MismatchError(backend, idx, op.pair, want, bool(int(result)))
            if sweep_stride > 0 and (idx + 1) % sweep_stride == 0:
                got = g.reach_matrix()
                bad = np.argwhere(got != oracle.reach)
                if bad.size:
                    x, y = (int(v) for v in bad[0])
                    raise MismatchError(backend, idx, (x + 1, y + 1), bool(oracle.reach[x, y]), bool(got[x, y]))
        if audit_stride > 0 and (idx + 1) % audit_stride == 0:
            problems = audit(g)
            if problems:
                raise AuditError(backend, idx, problems)
        yield BenchRecord(backend, trace.n, idx, op.kind, units, ns, result)
