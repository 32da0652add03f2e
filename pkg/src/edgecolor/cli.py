"""Command-line front end: color, verify, density, bench."""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

from .coloring import parse_coloring, serialize_coloring
from .driver import OK, ColorConflict, NotTotal, OutOfRange, RunConfig, color_graph, verify
from .errors import EdgeColorError, Infeasible, TooLarge
from .graph import max_degree, parse_graph
from .oracle import gamma_bruteforce


@dataclass
class BenchRecord:
    name: str
    n: int
    m: int
    delta: int
    k_used: int
    gamma: int | None
    wall_time: float
    swaps: int


def _read_graph(path: str):
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh)


def cmd_color(args) -> int:
    g = _read_graph(args.graph)
    lines: list[str] = []
    cfg = RunConfig(
        initial_k=args.colors,
        escalate=not args.no_escalate,
        shuffle=args.shuffle,
        trace=args.trace is not None,
        trace_sink=lines.append if args.trace is not None else None,
    )
    try:
        res = color_graph(g, cfg)
    except Infeasible as exc:
        if args.trace is not None:
            Path(args.trace).write_text("".join(x + "\n" for x in lines))
        if args.certificate and exc.certificate is not None:
            Path(args.certificate).write_text(json.dumps([exc.certificate.to_json()]) + "\n")
        cert = exc.certificate
        msg = f"infeasible: no proper {exc.k}-edge-coloring"
        if cert is not None:
            msg += f" (dense set of {len(cert.vertices)} vertices, {cert.edge_count} edges, bound {cert.bound})"
        else:
            msg += "; escalation is off and a Δ-palette failure carries no certificate"
        print(msg, file=sys.stderr)
        return 2
    text = serialize_coloring(res.coloring)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if args.trace is not None:
        Path(args.trace).write_text("".join(x + "\n" for x in lines))
    if args.certificate:
        Path(args.certificate).write_text(json.dumps([c.to_json() for _, c in res.certificates]) + "\n")
    print(f"colors {res.k_used} certificates {len(res.certificates)}", file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    g = _read_graph(args.graph)
    with open(args.coloring, encoding="utf-8") as fh:
        c = parse_coloring(fh, g)
    out = verify(g, c)
    if out == OK:
        print("OK")
        return 0
    print(describe(out))
    return 1


def describe(v) -> str:
    """One line for a verification failure; edge ids 0-based, vertices 1-based as in the files."""
    if isinstance(v, NotTotal):
        return f"not total: edge {v.edge} has no color"
    if isinstance(v, OutOfRange):
        return f"out of range: edge {v.edge} has color {v.color}"
    if isinstance(v, ColorConflict):
        return f"conflict: edges {v.edge1} and {v.edge2} share vertex {v.vertex + 1} and color {v.color}"
    return str(v)


def cmd_density(args) -> int:
    g = _read_graph(args.graph)
    rep = gamma_bruteforce(g, limit=args.limit)
    print(f"gamma {rep.gamma}")
    print("set " + " ".join(str(v + 1) for v in rep.argmax_set))
    return 0


def bench_one(path: str, oracle_limit: int = 20) -> BenchRecord:
    g = _read_graph(path)
    t = time.perf_counter()
    res = color_graph(g)
    wall = time.perf_counter() - t
    try:
        gam = gamma_bruteforce(g, limit=oracle_limit).gamma
    except TooLarge:
        gam = None
    return BenchRecord(
        Path(path).name,
        g.vertex_count,
        g.edge_count,
        max_degree(g),
        res.k_used,
        gam,
        round(wall, 6),
        int(res.stats.get("swaps", 0)),
    )


def _bench_row(path: str) -> dict:
    try:
        return asdict(bench_one(path))
    except (EdgeColorError, OSError, ValueError) as exc:
        return {"name": Path(path).name, "error": str(exc)}


def cmd_bench(args) -> int:
    files = sorted(str(p) for p in Path(args.directory).iterdir() if p.is_file() and p.suffix == ".col")
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(_bench_row, files))
    else:
        rows = [_bench_row(f) for f in files]
    bad = 0
    for row in rows:
        print(json.dumps(row))
        if "error" in row:
            bad += 1
        elif row["gamma"] is not None and row["k_used"] > max(row["delta"] + 1, row["gamma"]):
            bad += 1
    return 1 if bad else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="edgecolor", description="Edge-color multigraphs with max(Δ+1, Γ) colors.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("color", help="color a graph file")
    c.add_argument("graph")
    c.add_argument("--colors", type=int, default=None, help="starting palette (default Δ+1)")
    c.add_argument("--no-escalate", action="store_true", help="fail with exit 2 instead of growing the palette")
    c.add_argument("--shuffle", type=int, default=None, help="seed for permuting the edge order")
    c.add_argument("--trace", default=None, help="write engine trace lines here")
    c.add_argument("--out", default=None, help="write the coloring here instead of stdout")
    c.add_argument("--certificate", default=None, help="write density certificates as JSON here")
    c.set_defaults(func=cmd_color)

    v = sub.add_parser("verify", help="check a coloring file against a graph")
    v.add_argument("graph")
    v.add_argument("coloring")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("density", help="exact density by subset enumeration")
    d.add_argument("graph")
    d.add_argument("--limit", type=int, default=20)
    d.set_defaults(func=cmd_density)

    b = sub.add_parser("bench", help="color every .col file in a directory, one JSON line each")
    b.add_argument("directory")
    b.add_argument("--jobs", type=int, default=1)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except EdgeColorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
