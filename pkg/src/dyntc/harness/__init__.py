"""Workload generation, trace replay, oracle checks and benchmarks."""

from .bench import bench, slope, write_csv, write_summary
from .generate import PROFILES, generate
from .replay import AuditError, BenchRecord, MismatchError, audit, replay
from .trace import Trace, TraceError, TraceOp, loads, read

__all__ = [
    "PROFILES", "AuditError", "BenchRecord", "MismatchError", "Trace", "TraceError",
    "TraceOp", "audit", "bench", "generate", "loads", "read", "replay", "slope",
    "write_csv", "write_summary",
]
