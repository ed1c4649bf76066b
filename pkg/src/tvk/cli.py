"""Command-line front end.

Exit codes: 0 ok, 2 degenerate input, 3 size gate, 4 budget exceeded,
5 verification failure, 64 usage error. Output is machine-readable JSON on
stdout (or --out); diagnostics are single lines on stderr. All randomness
is seeded, so identical configs produce byte-identical JSON.
"""
from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from typing import Optional

from . import fileio, svg
from .apps import (
    crossing_simplices,
    crossing_tverberg,
    tetrahedra_face_linked,
    verify_crossing_partition,
    verify_linking_counterexample,
)
from .errors import (
    BudgetExceeded,
    GeneralPositionViolated,
    SizeOutOfRange,
    TvkError,
)
from .fixing import cocycle_check, parity_check
from .generate import random_point_set
from .geometry import PointSet, in_general_position, mk_point, perturb
from .tverberg import tverberg_partition_bruteforce

EXIT_OK = 0
EXIT_DEGENERATE = 2
EXIT_SIZE_GATE = 3
EXIT_BUDGET = 4
EXIT_VERIFY = 5
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    input: Optional[str] = None
    r: Optional[int] = None
    seed: int = 0
    perturb: bool = False
    perturb_k: int = 16
    measure: str = "volume"
    budget: Optional[int] = None
    simplices: bool = False
    discard: Optional[list] = None
    point: Optional[tuple] = None
    d: Optional[int] = None
    n: Optional[int] = None
    bound: int = 10000
    svg_path: Optional[str] = None
    out: Optional[str] = None
    report: Optional[str] = None
    workers: int = 1


def _build_parser() -> _Parser:
    p = _Parser(prog="tvk", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def add_common(sp, needs_input=True):
        if needs_input:
            sp.add_argument("--input", required=True, help="point file")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", help="write JSON here instead of stdout")

    sp = sub.add_parser("partition", help="size-bounded common-point partition")
    add_common(sp)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--perturb", action="store_true")
    sp.add_argument("--perturb-k", type=int, default=16)

    sp = sub.add_parser("crossing", help="crossing partition pipeline")
    add_common(sp)
    sp.add_argument("--r", type=int)
    sp.add_argument("--simplices", action="store_true",
                    help="run the floor(n/(d+1)) crossing-simplices variant")
    sp.add_argument("--measure", choices=["volume", "point-count"], default="volume")
    sp.add_argument("--budget", type=int)
    sp.add_argument("--perturb", action="store_true")
    sp.add_argument("--perturb-k", type=int, default=16)
    sp.add_argument("--discard", help="comma-separated indices to drop (simplices mode)")
    sp.add_argument("--svg", dest="svg_path", help="render the result (d=2 only)")

    sp = sub.add_parser("verify", help="re-verify a crossing/partition JSON report")
    add_common(sp)
    sp.add_argument("--report", required=True, help="JSON produced by crossing/partition")

    sp = sub.add_parser("parity", help="origin-pair parity of 2(d+1) points")
    add_common(sp)
    sp.add_argument("--point", help="candidate point, comma-separated (default origin)")

    sp = sub.add_parser("cocycle", help="cocycle property of origin-containing subsets")
    add_common(sp)
    sp.add_argument("--point", help="candidate point, comma-separated (default origin)")

    sp = sub.add_parser("link", help="face-linking verdict for two tetrahedra (8 points)")
    add_common(sp)

    sp = sub.add_parser("fs", help="verify the built-in 8-point linking counterexample")
    add_common(sp, needs_input=False)

    sp = sub.add_parser("gen", help="seeded general-position point generator")
    add_common(sp, needs_input=False)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--bound", type=int, default=10000)
    return p


def _read_points(path: str) -> PointSet:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fileio.parse_points(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except (ValueError, TvkError) as exc:
        raise UsageError(f"cannot parse {path}: {exc}") from exc


def _emit(payload, out_path: Optional[str]):
    text = fileio.dump_json(payload)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _workers() -> int:
    raw = os.environ.get("TVK_THREADS", "1")
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"TVK_THREADS must be an integer >= 1, got {raw!r}")
    if value < 1:
        raise UsageError(f"TVK_THREADS must be an integer >= 1, got {raw!r}")
    return value


def _gate_general_position(ps, cfg):
    violations = in_general_position(ps)
    if not violations:
        return ps, None
    if not cfg.perturb:
        raise GeneralPositionViolated(
            f"{len(violations)} affinely dependent subsets (rerun with --perturb)",
            violations,
        )
    moved = perturb(ps, cfg.seed, cfg.perturb_k)
    return moved, {
        "perturbed": True,
        "original_points": [[fileio.fmt_rat(c) for c in p] for p in ps.points],
    }


def _parse_point(raw, dim):
    if raw is None:
        return mk_point([0] * dim)
    coords = [fileio.parse_rat(t) for t in raw.split(",")]
    if len(coords) != dim:
        raise UsageError(f"point has {len(coords)} coordinates, expected {dim}")
    return mk_point(coords)


def cmd_partition(cfg: RunConfig) -> int:
    ps = _read_points(cfg.input)
    if cfg.r is None or cfg.r < 1:
        raise UsageError("--r must be a positive integer")
    ps, extra = _gate_general_position(ps, cfg)
    partition = tverberg_partition_bruteforce(ps, cfg.r, workers=cfg.workers)
    payload = fileio.partition_payload(
        partition,
        ps.dim,
        {
            "command": "partition",
            "n": len(ps),
            "r": cfg.r,
            "seed": cfg.seed,
            "points": [[fileio.fmt_rat(c) for c in p] for p in ps.points],
        },
    )
    if extra:
        payload.update(extra)
    _emit(payload, cfg.out)
    return EXIT_OK


def cmd_crossing(cfg: RunConfig) -> int:
    ps = _read_points(cfg.input)
    ps, extra = _gate_general_position(ps, cfg)
    if cfg.simplices:
        discard = None
        if cfg.discard:
            discard = [int(t) for t in cfg.discard.split(",") if t.strip()]
        report = crossing_simplices(
            ps,
            measure=cfg.measure,
            budget=cfg.budget,
            seed=cfg.seed,
            discard=discard,
            workers=cfg.workers,
        )
        r = len(report.partition.parts)
    else:
        if cfg.r is None or cfg.r < 1:
            raise UsageError("--r must be a positive integer (or use --simplices)")
        r = cfg.r
        report = crossing_tverberg(
            ps,
            r,
            measure=cfg.measure,
            budget=cfg.budget,
            seed=cfg.seed,
            workers=cfg.workers,
        )
    payload = fileio.partition_payload(
        report.partition,
        ps.dim,
        {
            "command": "crossing",
            "n": len(ps),
            "r": r,
            "seed": cfg.seed,
            "measure": report.trace.measure,
            "trace": fileio.trace_payload(report.trace),
            "verdicts": report.verdicts,
            "discarded": report.discarded,
            "points": [[fileio.fmt_rat(c) for c in p] for p in ps.points],
        },
    )
    if extra:
        payload.update(extra)
    _emit(payload, cfg.out)
    if cfg.svg_path:
        if ps.dim != 2:
            raise UsageError("--svg requires d=2")
        with open(cfg.svg_path, "w", encoding="utf-8") as fh:
            fh.write(svg.render_partition(ps, report.partition, report.discarded))
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    ps = _read_points(cfg.input)
    try:
        with open(cfg.report, "r", encoding="utf-8") as fh:
            import json

            data = json.load(fh)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read report {cfg.report}: {exc}") from exc
    partition = fileio.partition_from_payload(data)
    result = verify_crossing_partition(ps, partition)
    _emit({"command": "verify", "ok": result.ok, "violations": result.violations}, cfg.out)
    return EXIT_OK if result.ok else EXIT_VERIFY


def cmd_parity(cfg: RunConfig) -> int:
    ps = _read_points(cfg.input)
    o = _parse_point(cfg.point, ps.dim)
    count, even = parity_check(ps, o)
    _emit({"command": "parity", "count": count, "even": even}, cfg.out)
    return EXIT_OK


def cmd_cocycle(cfg: RunConfig) -> int:
    ps = _read_points(cfg.input)
    o = _parse_point(cfg.point, ps.dim)
    result = cocycle_check(ps, o)
    payload = {
        "command": "cocycle",
        "ok": result.ok,
        "offending": list(result.offending) if result.offending else None,
    }
    _emit(payload, cfg.out)
    return EXIT_OK if result.ok else EXIT_VERIFY


def cmd_link(cfg: RunConfig) -> int:
    ps = _read_points(cfg.input)
    if ps.dim != 3 or len(ps) != 8:
        raise UsageError("link needs exactly 8 points in R^3 (two tetrahedra)")
    verdict = tetrahedra_face_linked((0, 1, 2, 3), (4, 5, 6, 7), ps)
    _emit({"command": "link", "verdict": verdict.value}, cfg.out)
    return EXIT_OK


def cmd_fs(cfg: RunConfig) -> int:
    report = verify_linking_counterexample()
    payload = {
        "command": "fs",
        "origin_pair_count": report.origin_pair_count,
        "origin_pairs": [[list(f), list(g)] for f, g in report.origin_pairs],
        "linked_pairs": report.linked_pairs,
        "faces_intersect_pairs": report.faces_intersect_pairs,
        "falsified": report.falsified,
    }
    _emit(payload, cfg.out)
    return EXIT_OK if not report.falsified else EXIT_VERIFY


def cmd_gen(cfg: RunConfig) -> int:
    if cfg.d is None or cfg.d < 1 or cfg.n is None or cfg.n < 1:
        raise UsageError("--d and --n must be positive integers")
    ps = random_point_set(cfg.d, cfg.n, cfg.seed, bound=cfg.bound)
    text = fileio.format_points(ps)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


_COMMANDS = {
    "partition": cmd_partition,
    "crossing": cmd_crossing,
    "verify": cmd_verify,
    "parity": cmd_parity,
    "cocycle": cmd_cocycle,
    "link": cmd_link,
    "fs": cmd_fs,
    "gen": cmd_gen,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
        cfg = RunConfig(
            command=ns.command,
            input=getattr(ns, "input", None),
            r=getattr(ns, "r", None),
            seed=getattr(ns, "seed", 0),
            perturb=getattr(ns, "perturb", False),
            perturb_k=getattr(ns, "perturb_k", 16),
            measure=getattr(ns, "measure", "volume"),
            budget=getattr(ns, "budget", None),
            simplices=getattr(ns, "simplices", False),
            discard=getattr(ns, "discard", None),
            point=getattr(ns, "point", None),
            d=getattr(ns, "d", None),
            n=getattr(ns, "n", None),
            bound=getattr(ns, "bound", 10000),
            svg_path=getattr(ns, "svg_path", None),
            out=getattr(ns, "out", None),
            report=getattr(ns, "report", None),
            workers=_workers(),
        )
        return _COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"tvk: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GeneralPositionViolated as exc:
        print(f"tvk: degenerate input: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except SizeOutOfRange as exc:
        print(f"tvk: size gate: {exc}", file=sys.stderr)
        return EXIT_SIZE_GATE
    except BudgetExceeded as exc:
        payload = {
            "command": "crossing",
            "error": "budget_exceeded",
            "trace": fileio.trace_payload(exc.trace),
            "parts": [list(p) for p in exc.partition.parts] if exc.partition else None,
        }
        sys.stdout.write(fileio.dump_json(payload))
        print(f"tvk: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except TvkError as exc:
        print(f"tvk: error: {exc}", file=sys.stderr)
        return EXIT_VERIFY


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
