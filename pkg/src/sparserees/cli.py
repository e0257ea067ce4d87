"""Command-line frontend: ``info``, ``relations``, ``verify``, ``sweep``.

Exit codes: 0 when every executed check passes, 1 on any failure, 2 on a
usage or validation error.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .checks import CHECK_NAMES, Config, run_all
from .report import CheckReport, dumps, shape_report_json
from .sparse import (
    MinorClass,
    Shape,
    ShapeError,
    ferrers_partition,
    ladder,
    minor_counts,
    minor_table,
    relations,
    render_ferrers,
    render_ladder,
    render_matrix,
    valid_shapes,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

TRIVIAL_NOTICE = "note: s = 0, so every minor is a monomial and all checks are trivial"


@dataclass
class CliConfig:
    command: str
    shape: Optional[Tuple[int, int, int]] = None
    nmax: Optional[int] = None
    kmax: int = 3
    degmax: int = 6
    elim_budget: int = 5
    checks: Optional[Tuple[str, ...]] = None
    format: str = "text"
    out: Optional[str] = None
    include_trivial: bool = False
    jobs: int = 1

    def check_config(self) -> Config:
        return Config(kmax=self.kmax, degmax=self.degmax, elim_budget=self.elim_budget, checks=self.checks)


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sparserees", description="Rees algebras and special fibers of sparse 2 x n matrices.")
    sub = p.add_subparsers(dest="command", required=True)

    def shape_args(sp):
        sp.add_argument("n", type=int)
        sp.add_argument("r", type=int)
        sp.add_argument("s", type=int)

    def output_args(sp):
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--out", help="write the output to this file instead of stdout")

    def budget_args(sp):
        sp.add_argument("--kmax", type=_nonneg, default=3, help="largest power k for power checks (default 3)")
        sp.add_argument("--degmax", type=_nonneg, default=6, help="degree bound D for Hilbert function checks (default 6)")
        sp.add_argument("--elim-budget", type=_nonneg, default=5, help="largest n for elimination checks (default 5)")
        sp.add_argument("--check", action="append", choices=CHECK_NAMES, dest="checks",
                        help="run only this check (repeatable)")

    sp = sub.add_parser("info", help="matrix pattern, minors, partition and ladders")
    shape_args(sp)
    output_args(sp)
    sp = sub.add_parser("relations", help="list the linear and Pluecker relations")
    shape_args(sp)
    output_args(sp)
    sp = sub.add_parser("verify", help="run the checks on one shape")
    shape_args(sp)
    budget_args(sp)
    output_args(sp)
    sp = sub.add_parser("sweep", help="run the checks on every valid shape up to nmax")
    sp.add_argument("nmax", type=int)
    sp.add_argument("--include-trivial", action="store_true", help="also sweep s = 0 shapes")
    sp.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    budget_args(sp)
    output_args(sp)
    return p


def parse_config(argv: Optional[Sequence[str]] = None) -> CliConfig:
    ns = build_parser().parse_args(argv)
    cfg = CliConfig(command=ns.command, format=ns.format, out=ns.out)
    if ns.command in ("info", "relations", "verify"):
        cfg.shape = (ns.n, ns.r, ns.s)
    if ns.command in ("verify", "sweep"):
        cfg.kmax, cfg.degmax, cfg.elim_budget = ns.kmax, ns.degmax, ns.elim_budget
        cfg.checks = tuple(ns.checks) if ns.checks else None
    if ns.command == "sweep":
        cfg.nmax, cfg.include_trivial, cfg.jobs = ns.nmax, ns.include_trivial, max(1, ns.jobs)
    return cfg


# ---------------------------------------------------------------------------
# commands


def _tuple(parts) -> str:
    return "(" + ",".join(map(str, parts)) + ")"


def info_data(shape: Shape) -> dict:
    counts = minor_counts(shape)
    L, Lp = ladder(shape), ladder(shape, True)
    lam = tuple(p for p in ferrers_partition(shape) if p > 0)
    binomials = [f"f_{{{i},{j}}}" for (i, j), (cls, _) in sorted(minor_table(shape).items()) if cls is MinorClass.BINOMIAL]
    return {
        "shape": {"n": shape.n, "r": shape.r, "s": shape.s},
        "lambda": list(lam),
        "minors": {"binomial": counts[MinorClass.BINOMIAL], "monomial": counts[MinorClass.MONOMIAL],
                   "zero": counts[MinorClass.ZERO]},
        "binomial_minors": binomials,
        "ladder_boxes": len(L.boxes),
        "extended_ladder_boxes": len(Lp.boxes) + sum(Lp.extra_boxes()),
        "variables": {"x": len(shape.x_vars()), "y": len(shape.y_vars())},
    }


def cmd_info(shape: Shape, fmt: str = "text") -> str:
    d = info_data(shape)
    if fmt == "json":
        return dumps(d)
    m = d["minors"]
    lines = [
        f"shape (n, r, s) = {shape}",
        "",
        "matrix:",
        render_matrix(shape),
        "",
        f"minors f_ij: {m['binomial']} binomial, {m['monomial']} monomial, {m['zero']} zero",
    ]
    if d["binomial_minors"]:
        lines.append("binomial minors: " + ", ".join(d["binomial_minors"]))
    lines += [
        f"lambda = {_tuple(d['lambda'])}",
        f"ladder L_lambda: {d['ladder_boxes']} boxes; extended ladder L'_lambda: {d['extended_ladder_boxes']} boxes",
        "",
        "Ferrers diagram:",
        render_ferrers(shape),
        "",
        "ladder L_lambda:",
        render_ladder(ladder(shape)),
        "",
        "extended ladder L'_lambda:",
        render_ladder(ladder(shape, True)),
    ]
    return "\n".join(lines)


def cmd_relations(shape: Shape, fmt: str = "text") -> str:
    rels = relations(shape)
    if fmt == "json":
        return dumps({
            "shape": {"n": shape.n, "r": shape.r, "s": shape.s},
            "linear": [{"name": r.name(), "index": list(r.index), "poly": str(r.poly)} for r in rels.linear],
            "plucker": [{"name": r.name(), "index": list(r.index), "poly": str(r.poly)} for r in rels.plucker],
        })
    lines = [f"shape {shape}: {len(rels.linear)} linear, {len(rels.plucker)} Pluecker"]
    for rel in rels.all():
        lines.append(f"{rel.name()} = {rel.poly}")
    return "\n".join(lines)


def _verify_one(args) -> Tuple[Tuple[int, int, int], List[CheckReport]]:
    shape, config = args
    return shape.astuple(), run_all(shape, config)


def _render_reports(results, fmt: str, single: bool = False) -> str:
    if fmt == "json":
        docs = [shape_report_json(sh, reps) for sh, reps in results]
        return dumps(docs[0] if single else docs)
    lines = []
    for sh, reps in results:
        lines.append(f"shape {_tuple(sh)}")
        if sh[2] == 0:
            lines.append(TRIVIAL_NOTICE)
        lines += ["  " + rep.summary_line() + (f"  k={rep.params['k']}" if "k" in rep.params else "") for rep in reps]
    total = [rep for _, reps in results for rep in reps]
    n_pass = sum(r.passed for r in total)
    n_fail = sum(r.status == "fail" for r in total)
    n_skip = sum(r.skipped for r in total)
    lines.append(f"{len(results)} shape(s): {n_pass} passed, {n_fail} failed, {n_skip} skipped")
    return "\n".join(lines)


def _exit_code(results) -> int:
    return EXIT_FAIL if any(rep.status == "fail" for _, reps in results for rep in reps) else EXIT_OK


def cmd_verify(shape: Shape, config: Config, fmt: str = "text") -> Tuple[str, int]:
    results = [_verify_one((shape, config))]
    return _render_reports(results, fmt, single=True), _exit_code(results)


def cmd_sweep(nmax: int, config: Config, fmt: str = "text", include_trivial: bool = False,
              jobs: int = 1) -> Tuple[str, int]:
    shapes = valid_shapes(nmax, include_trivial=include_trivial)
    work = [(sh, config) for sh in shapes]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_verify_one, work))
    else:
        results = [_verify_one(w) for w in work]
    # pool.map keeps input order, so output is ordered by shape either way
    return _render_reports(results, fmt), _exit_code(results)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        cfg = parse_config(argv)
    except SystemExit as exc:  # argparse reports usage errors with code 2
        return int(exc.code or 0)
    try:
        if cfg.command == "sweep":
            if cfg.nmax is None or cfg.nmax < 3:
                raise ShapeError(f"nmax must be at least 3 (got {cfg.nmax})")
            text, code = cmd_sweep(cfg.nmax, cfg.check_config(), cfg.format, cfg.include_trivial, cfg.jobs)
        else:
            shape = Shape(*cfg.shape)
            if shape.trivial and cfg.format == "text" and cfg.command != "verify":
                print(TRIVIAL_NOTICE, file=sys.stderr)
            if cfg.command == "info":
                text, code = cmd_info(shape, cfg.format), EXIT_OK
            elif cfg.command == "relations":
                text, code = cmd_relations(shape, cfg.format), EXIT_OK
            else:
                text, code = cmd_verify(shape, cfg.check_config(), cfg.format)
    except (ShapeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(text, cfg.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
