"""Line-oriented trace format.

    N <n>
    INIT <k> u1 v1 ... uk vk
    INSERT <v> <k> u1 v1 ... uk vk
    DELETE <k> u1 v1 ... uk vk
    QUERY <u> <v>

Vertices are 1-based. Text after ``#`` is ignored.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

KINDS = ("INIT", "INSERT", "DELETE", "QUERY")


class TraceError(ValueError):
    def __init__(self, line_no: int, msg: str) -> None:
        self.line_no = line_no
        super().__init__(f"line {line_no}: {msg}")


@dataclass(frozen=True)
class TraceOp:
    kind: str
    edges: tuple[tuple[int, int], ...] = ()
    vertex: int = 0
    pair: tuple[int, int] = (0, 0)

    def to_line(self) -> str:
        flat = " ".join(f"{u} {v}" for u, v in self.edges)
        tail = f" {flat}" if flat else ""
        if self.kind == "INIT":
            return f"INIT {len(self.edges)}{tail}"
        if self.kind == "INSERT":
            return f"INSERT {self.vertex} {len(self.edges)}{tail}"
        if self.kind == "DELETE":
            return f"DELETE {len(self.edges)}{tail}"
        return f"QUERY {self.pair[0]} {self.pair[1]}"


@dataclass
class Trace:
    n: int
    ops: list[TraceOp] = field(default_factory=list)

    def dumps(self) -> str:
        return "\n".join([f"N {self.n}"] + [op.to_line() for op in self.ops]) + "\n"

    def write(self, path) -> None:
        Path(path).write_text(self.dumps())


def _ints(tokens: list[str], line_no: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError as exc:
        raise TraceError(line_no, f"expected integers: {exc}") from None


def _edges(nums: list[int], line_no: int, n: int) -> tuple[tuple[int, int], ...]:
    if not nums:
        raise TraceError(line_no, "missing edge count")
    k, rest = nums[0], nums[1:]
    if k < 0 or len(rest) != 2 * k:
        raise TraceError(line_no, f"edge count {k} does not match {len(rest)} endpoints")
    _check_vertices(rest, line_no, n)
    return tuple(zip(rest[0::2], rest[1::2]))


def _check_vertices(vs: list[int], line_no: int, n: int) -> None:
    for v in vs:
        if not 1 <= v <= n:
            raise TraceError(line_no, f"vertex {v} outside 1..{n}")


def loads(text: str) -> Trace:
    trace: Trace | None = None
    for line_no, raw in enumerate(text.splitlines(), 1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        head, nums = tokens[0].upper(), _ints(tokens[1:], line_no)
        if trace is None:
            if head != "N" or len(nums) != 1 or nums[0] < 1:
                raise TraceError(line_no, "trace must start with 'N <n>'")
            trace = Trace(nums[0])
            continue
        n = trace.n
        if head == "INIT":
            op = TraceOp("INIT", _edges(nums, line_no, n))
        elif head == "INSERT":
            if not nums:
                raise TraceError(line_no, "missing center vertex")
            _check_vertices(nums[:1], line_no, n)
            op = TraceOp("INSERT", _edges(nums[1:], line_no, n), vertex=nums[0])
        elif head == "DELETE":
            op = TraceOp("DELETE", _edges(nums, line_no, n))
        elif head == "QUERY":
            if len(nums) != 2:
                raise TraceError(line_no, "QUERY takes two vertices")
            _check_vertices(nums, line_no, n)
            op = TraceOp("QUERY", pair=(nums[0], nums[1]))
        else:
            raise TraceError(line_no, f"unknown operation {tokens[0]!r}")
        trace.ops.append(op)
    if trace is None:
        raise TraceError(0, "empty trace")
    return trace


def read(path) -> Trace:
    return loads(Path(path).read_text())
