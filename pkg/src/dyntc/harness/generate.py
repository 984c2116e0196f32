"""Seeded workload generators."""

from __future__ import annotations

import random

from .trace import Trace, TraceOp

PROFILES = ("mixed", "incremental", "decremental", "dag-mixed")


def generate(
    n: int,
    length: int,
    profile: str,
    seed: int,
    degree: float = 1.5,
    batch: int = 3,
) -> Trace:
    """A trace with one INIT followed by ``length`` operations.

    ``degree`` sets the mean out-degree of random initial graphs and
    ``batch`` bounds the edges per insertion or deletion.
    """
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}; choose from {PROFILES}")
    if n < 1 or length < 0:
        raise ValueError("need n >= 1 and length >= 0")
    rng = random.Random(seed)
    dag = profile == "dag-mixed"
    rank = list(range(1, n + 1))
    rng.shuffle(rank)
    pos = {v: k for k, v in enumerate(rank)}

    def allowed(u: int, v: int) -> bool:
        return u != v and (not dag or pos[u] < pos[v])

    p = min(1.0, degree / n)
    edges: set[tuple[int, int]] = set()
    if profile != "incremental":
        edges = {
            (u, v)
            for u in range(1, n + 1)
            for v in range(1, n + 1)
            if allowed(u, v) and rng.random() < p
        }
    ops = [TraceOp("INIT", tuple(sorted(edges)))]

    weights = {
        "mixed": (0.4, 0.3, 0.3),
        "dag-mixed": (0.4, 0.3, 0.3),
        "incremental": (0.7, 0.0, 0.3),
        "decremental": (0.0, 0.7, 0.3),
    }[profile]
    for _ in range(length):
        kind = rng.choices(("INSERT", "DELETE", "QUERY"), weights)[0]
        if kind == "DELETE" and not edges:
            kind = "QUERY" if profile == "decremental" else "INSERT"
        if kind == "INSERT":
            op = _insertion(rng, n, edges, allowed, batch)
            if op is None:
                kind = "QUERY"
            else:
                edges.update(op.edges)
                ops.append(op)
                continue
        if kind == "DELETE":
            pool = sorted(edges)
            gone = tuple(sorted(rng.sample(pool, rng.randint(1, min(batch, len(pool))))))
            edges.difference_update(gone)
            ops.append(TraceOp("DELETE", gone))
            continue
        ops.append(TraceOp("QUERY", pair=(rng.randint(1, n), rng.randint(1, n))))
    return Trace(n, ops)


def _insertion(rng, n, edges, allowed, batch):
    v = rng.randint(1, n)
    cands = [(v, u) for u in range(1, n + 1) if allowed(v, u) and (v, u) not in edges]
    cands += [(u, v) for u in range(1, n + 1) if allowed(u, v) and (u, v) not in edges]
    if not cands:
        return None
    picked = rng.sample(cands, rng.randint(1, min(batch, len(cands))))
    return TraceOp("INSERT", tuple(sorted(picked)), vertex=v)
