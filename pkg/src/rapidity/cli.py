"""Command-line front end.

Exit codes: 0 success, 1 a verified law failed, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass
from functools import reduce
from typing import Sequence

from rapidity.chain import MAX_STEPS, comparison_table, rows_to_csv, rows_to_json
from rapidity.errors import RapidityError
from rapidity.maps import Rapidity, alpha, beta_inv
from rapidity.verify import LAWS, SampleSpec, run_laws
from rapidity.velocity import (
    DEFAULT_TOL,
    ExtendedVelocity,
    IsoParams,
    compose_extended,
    compose_sr,
    make_velocity,
)

FORMATS = ("plain", "json", "csv")
FORMAT_ENV = "RAPIDITY_FORMAT"

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class CliConfig:
    c: float = 1.0
    k: float = 1.0
    format: str = "plain"
    tol: float = DEFAULT_TOL
    seed: int = 0
    extended: bool = False

    @property
    def params(self) -> IsoParams:
        return IsoParams(self.c, self.k)


def _positive_float(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not (math.isfinite(x) and x > 0):
        raise argparse.ArgumentTypeError(f"must be a finite number > 0: {text!r}")
    return x


def _literal(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise UsageError(f"not a number: {text!r}")
    if not math.isfinite(x):
        raise UsageError(f"not a finite number: {text!r}")
    return x


def _fmt(x: float, fmt: str) -> str:
    # machine formats use repr: the shortest string that round-trips exactly
    if fmt == "plain":
        return f"{x:.6g}"
    return repr(x)


def _emit_record(record: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(record) + "\n")
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(record.keys())
        writer.writerow(
            [_fmt(v, fmt) if isinstance(v, float) else v for v in record.values()]
        )
        out.write(buf.getvalue())
    else:
        for key, v in record.items():
            out.write(f"{key} {_fmt(v, fmt) if isinstance(v, float) else v}\n")


def cmd_compose(literals: Sequence[str], config: CliConfig, out=sys.stdout) -> int:
    if len(literals) < 2:
        raise UsageError("compose needs at least two velocities")
    values = [_literal(s) for s in literals]
    c = config.c
    if config.extended:
        for x in values:
            if abs(x) > c:
                raise UsageError(f"|{x!r}| exceeds c = {c!r}")
        result = reduce(compose_extended, [ExtendedVelocity(x / c) for x in values])
        saturated = False
    else:
        result = reduce(compose_sr, [make_velocity(x, c) for x in values])
        saturated = result.saturated
    _emit_record(
        {"velocity": result.beta * c, "beta": result.beta, "saturated": saturated},
        config.format,
        out,
    )
    return EXIT_OK


def cmd_rapidity(direction: str, literal: str, config: CliConfig, out=sys.stdout) -> int:
    x = _literal(literal)
    p = config.params
    if direction == "to":
        u = make_velocity(x, p.c)
        record = {"velocity": x, "beta": u.beta, "rapidity": alpha(u, p).value}
    else:
        u = beta_inv(Rapidity(x), p)
        record = {"rapidity": x, "velocity": u.beta * p.c, "beta": u.beta}
    if config.format == "plain":
        key = "rapidity" if direction == "to" else "velocity"
        out.write(_fmt(record[key], "plain") + "\n")
    else:
        _emit_record(record, config.format, out)
    return EXIT_OK


def cmd_chain(literal: str, n: int, config: CliConfig, out=sys.stdout) -> int:
    dv = _literal(literal)
    if not 0 < dv < config.c:
        raise UsageError(f"dv must satisfy 0 < dv < c = {config.c!r}, got {dv!r}")
    if not 1 <= n <= MAX_STEPS:
        raise UsageError(f"n must lie in [1, {MAX_STEPS}], got {n}")
    rows = comparison_table(dv / config.c, n)
    if config.format == "csv":
        out.write(rows_to_csv(rows))
    elif config.format == "json":
        out.write(rows_to_json(rows) + "\n")
    else:
        out.write(f"{'step':>8} {'sr_beta':>12} {'newton_value':>12} {'rapidity':>12}\n")
        for r in rows:
            out.write(
                f"{r.step:>8} {r.sr_beta:>12.6g} {r.newton_value:>12.6g} "
                f"{r.rapidity:>12.6g}\n"
            )
    return EXIT_OK


def cmd_verify(laws: Sequence[str], config: CliConfig, count: int, out=sys.stdout) -> int:
    if count < 1:
        raise UsageError(f"count must be >= 1, got {count}")
    selected = list(LAWS) if not laws or "all" in laws else list(dict.fromkeys(laws))
    spec = SampleSpec(count=count, seed=config.seed)
    reports = run_laws(selected, spec, config.params, tol=config.tol)
    if config.format == "json":
        out.write(json.dumps([r.to_dict() for r in reports], indent=2) + "\n")
    elif config.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        fields = list(reports[0].to_dict())
        writer.writerow(fields)
        for r in reports:
            d = r.to_dict()
            d["worst_case_inputs"] = " ".join(repr(b) for b in d["worst_case_inputs"])
            writer.writerow(
                [_fmt(v, "csv") if isinstance(v, float) else v for v in d.values()]
            )
        out.write(buf.getvalue())
    else:
        for r in reports:
            status = "PASS" if r.passed else "FAIL"
            out.write(
                f"{status} {r.law_name:<14} samples={r.samples_run} "
                f"max_violation={r.max_abs_violation:.6g} tol={r.tolerance:.6g}\n"
            )
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    units = common.add_mutually_exclusive_group()
    units.add_argument(
        "--c",
        type=_positive_float,
        default=argparse.SUPPRESS,
        help="light speed; velocity literals are then in physical units",
    )
    units.add_argument(
        "--natural",
        action="store_true",
        default=argparse.SUPPRESS,
        help="velocity literals in units of c (the default)",
    )
    common.add_argument("--k", type=_positive_float, default=argparse.SUPPRESS)
    common.add_argument("--tol", type=_positive_float, default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS)
    common.add_argument(
        "--extended",
        action="store_true",
        default=argparse.SUPPRESS,
        help="admit +-c (closed-interval composition)",
    )

    parser = argparse.ArgumentParser(
        prog="rapidity",
        parents=[common],
        description="Relativistic velocity addition and its rapidity isomorphisms.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compose", parents=[common], help="compose velocities")
    p.add_argument("velocities", nargs="+")

    p = sub.add_parser("rapidity", parents=[common], help="map to or from rapidity")
    p.add_argument("direction", choices=("to", "from"))
    p.add_argument("value")

    p = sub.add_parser("chain", parents=[common], help="repeated-boost table")
    p.add_argument("dv")
    p.add_argument("n", type=int)

    p = sub.add_parser("verify", parents=[common], help="check the group laws")
    p.add_argument(
        "laws", nargs="*", choices=("all",) + LAWS + ("stability",), default=["all"]
    )
    p.add_argument("--count", type=int, default=10_000)
    return parser


def _config(ns: argparse.Namespace) -> CliConfig:
    fmt = getattr(ns, "format", None) or os.environ.get(FORMAT_ENV) or "plain"
    if fmt not in FORMATS:
        raise UsageError(f"{FORMAT_ENV}={fmt!r} is not one of {', '.join(FORMATS)}")
    return CliConfig(
        c=getattr(ns, "c", 1.0),
        k=getattr(ns, "k", 1.0),
        format=fmt,
        tol=getattr(ns, "tol", DEFAULT_TOL),
        seed=getattr(ns, "seed", 0),
        extended=getattr(ns, "extended", False),
    )


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        config = _config(ns)
        if ns.command == "compose":
            return cmd_compose(ns.velocities, config, out)
        if ns.command == "rapidity":
            return cmd_rapidity(ns.direction, ns.value, config, out)
        if ns.command == "chain":
            return cmd_chain(ns.dv, ns.n, config, out)
        return cmd_verify(ns.laws, config, ns.count, out)
    except (UsageError, RapidityError) as exc:
        err.write(f"rapidity {ns.command}: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
