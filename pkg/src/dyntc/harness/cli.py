"""Command line entry point: ``dyntc {gen,replay,bench,audit}``."""

from __future__ import annotations

import argparse
import sys
from contextlib import nullcontext

from ..graph import BACKENDS
from . import trace as tr
from .bench import bench, write_csv, write_summary
from .generate import PROFILES, generate
from .replay import AuditError, MismatchError, replay


def _graph_opts(args) -> dict:
    opts = {}
    for key in ("epsilon", "prime", "seed", "leaf"):
        val = getattr(args, key, None)
        if val is not None:
            opts[key] = val
    return opts


def _open(path):
    if path in (None, "-"):
        return nullcontext(sys.stdout)
    return open(path, "w", newline="")


def _add_backend_opts(p: argparse.ArgumentParser) -> None:
    p.add_argument("--epsilon", type=float, help="buffer exponent for dag_counting")
    p.add_argument("--prime", type=int, help="modulus for dag_counting")
    p.add_argument("--leaf", type=int, help="direct-closure block size for divcon")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dyntc", description=__doc__)
    sub = parser.add_subparsers(dest="verb", required=True)

    g = sub.add_parser("gen", help="write a random trace")
    g.add_argument("n", type=int)
    g.add_argument("length", type=int)
    g.add_argument("--profile", choices=PROFILES, default="mixed")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output", default="-")

    for verb, text in (("replay", "run a trace on a backend"), ("audit", "replay with inline audits")):
        r = sub.add_parser(verb, help=text)
        r.add_argument("trace")
        r.add_argument("--backend", choices=BACKENDS, default="log")
        r.add_argument("--check", action="store_true", help="compare against the oracle")
        r.add_argument("--sweep-stride", type=int, default=0, help="all-pairs check every k ops")
        r.add_argument("--seed", type=int, help="prime selection seed for dag_counting")
        r.add_argument("--csv", default=None, help="per-op CSV destination")
        _add_backend_opts(r)
        if verb == "audit":
            r.add_argument("--stride", type=int, default=1, help="audit every k ops")

    b = sub.add_parser("bench", help="benchmark sweep to CSV")
    b.add_argument("--n", type=int, nargs="+", default=[32, 64, 128])
    b.add_argument("--profile", choices=PROFILES, default="mixed")
    b.add_argument("--backend", nargs="*", choices=BACKENDS, default=["divcon"])
    b.add_argument("--reps", type=int, default=1)
    b.add_argument("--length", type=int, default=50)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("-o", "--output", default="-", help="per-op CSV destination")
    b.add_argument("--summary", default=None, help="means and slopes CSV destination")
    _add_backend_opts(b)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.verb == "gen":
            text = generate(args.n, args.length, args.profile, args.seed).dumps()
            with _open(args.output) as out:
                out.write(text)
            return 0
        if args.verb in ("replay", "audit"):
            trace = tr.read(args.trace)
            stride = args.stride if args.verb == "audit" else 0
            check = args.check or args.verb == "audit"
            records = replay(trace, args.backend, check=check, sweep_stride=args.sweep_stride,
                             audit_stride=stride, **_graph_opts(args))
            if args.csv:
                with _open(args.csv) as out:
                    write_csv(records, out)
            else:
                count = sum(1 for _ in records)
                print(f"OK backend={args.backend} ops={count}")
            return 0
        opts = _graph_opts(args)
        opts.pop("seed", None)
        records = bench(args.n, args.profile, args.backend, args.reps, args.length, args.seed, **opts)
        with _open(args.output) as out:
            write_csv(records, out)
        if args.summary:
            with _open(args.summary) as out:
                write_summary(records, out)
        return 0
    except (MismatchError, AuditError) as exc:
        print(str(exc))
        return 1
    except (tr.TraceError, ValueError, OSError) as exc:
        print(f"ERROR {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
