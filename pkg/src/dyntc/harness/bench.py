"""Benchmark sweeps, CSV output and log-log trend estimates."""

from __future__ import annotations

import csv
from collections import defaultdict
from typing import Iterable, TextIO

import numpy as np

from .generate import generate
from .replay import BenchRecord, replay

COLUMNS = ("backend", "n", "op_index", "kind", "work_units", "ns", "result")
SUMMARY_COLUMNS = ("backend", "n", "kind", "ops", "mean_work_units", "mean_ns")
UPDATE_KINDS = ("INSERT", "DELETE")


def bench(
    ns: Iterable[int],
    profile: str,
    backends: Iterable[str],
    reps: int = 1,
    length: int = 50,
    seed: int = 0,
    **graph_opts,
) -> list[BenchRecord]:
    records = []
    for backend in backends:
        for n in ns:
            for r in range(reps):
                trace = generate(n, length, profile, seed + r)
                records.extend(replay(trace, backend, **graph_opts))
    return records


def write_csv(records: Iterable[BenchRecord], out: TextIO) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(COLUMNS)
    for rec in records:
        w.writerow(rec.row())


def means(records: Iterable[BenchRecord], kinds=UPDATE_KINDS) -> dict[str, dict[int, float]]:
    """Mean work units per ``(backend, n)`` over operations of ``kinds``."""
    acc: dict[str, dict[int, list[int]]] = defaultdict(lambda: defaultdict(list))
    for rec in records:
        if rec.kind in kinds:
            acc[rec.backend][rec.n].append(rec.work_units)
    return {b: {n: float(np.mean(v)) for n, v in sorted(d.items())} for b, d in acc.items()}


def slope(points: dict[int, float]) -> float:
    """Least-squares slope of ``log(value)`` against ``log(n)``."""
    ns = np.array([n for n, v in points.items() if v > 0], dtype=float)
    vs = np.array([v for v in points.values() if v > 0], dtype=float)
    if ns.size < 2:
        return float("nan")
    return float(np.polyfit(np.log(ns), np.log(vs), 1)[0])


def write_summary(records: list[BenchRecord], out: TextIO) -> None:
    groups: dict[tuple, list[BenchRecord]] = defaultdict(list)
    for rec in records:
        groups[(rec.backend, rec.n, rec.kind)].append(rec)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(SUMMARY_COLUMNS)
    for (backend, n, kind), recs in sorted(groups.items()):
        w.writerow([
            backend, n, kind, len(recs),
            f"{np.mean([r.work_units for r in recs]):.1f}",
            f"{np.mean([r.ns for r in recs]):.0f}",
        ])
    w.writerow([])
    w.writerow(("backend", "kinds", "slope"))
    for kinds in (UPDATE_KINDS, ("DELETE",)):
        for backend, pts in sorted(means(records, kinds).items()):
            w.writerow([backend, "+".join(kinds), f"{slope(pts):.3f}"])
