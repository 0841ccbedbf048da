"""Command-line front end: generate basis families, verify them, hop the
lattice, and tabulate line-state factorizations.

Exit codes: 0 success / all checks passed, 1 verification failure, 2 usage
error.  Report output is deterministic for a fixed invocation: rows come in
a fixed order, floats are printed with 15 significant digits, and timing is
only included on request.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from . import __version__
from .collective import format_word, hop, hop_dense, hop_trajectory, parse_word
from .errors import (
    InvalidDimension,
    InvalidLabel,
    NotPrime,
    WordParseError,
)
from .lines import line_factor_table
from .mes import mes_basis_to_json
from .schwinger import BasisLabel, family_to_json, validate_dimension
from .verify import SUITES, run_suites

DEFAULT_TOL = 1e-10
TOL_ENV_VAR = "MESPHASE_TOL"
DEFAULT_DIMS = [3, 5, 7]


def _fmt(x: float) -> str:
    return f"{x:.15g}"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _resolve_tol(args: argparse.Namespace) -> float:
    if getattr(args, "tol", None) is not None:
        return args.tol
    env = os.environ.get(TOL_ENV_VAR)
    if env is not None:
        try:
            return float(env)
        except ValueError as exc:
            raise InvalidDimension(f"{TOL_ENV_VAR}={env!r} is not a number") from exc
    return DEFAULT_TOL


# -- subcommands ---------------------------------------------------------------


def _cmd_gen_mub(args: argparse.Namespace) -> int:
    d = validate_dimension(args.d)
    data = family_to_json(d)
    if args.format == "json":
        _emit(json.dumps(data, indent=2) + "\n", args.out)
    else:
        header = ["b", "m"]
        header += [f"re{k}" for k in range(d)] + [f"im{k}" for k in range(d)]
        rows = []
        for basis in data["bases"]:
            for state in basis["states"]:
                ket = state["ket"]
                rows.append(
                    [basis["b"], state["m"]]
                    + [_fmt(x) for x in ket["re"]]
                    + [_fmt(x) for x in ket["im"]]
                )
        _emit(_csv_text(header, rows), args.out)
    return 0


def _cmd_gen_mes(args: argparse.Namespace) -> int:
    d = validate_dimension(args.d)
    b = BasisLabel.parse(args.b, d)
    b_prime = BasisLabel.parse(args.b_prime, d)
    data = mes_basis_to_json(d, b, b_prime)
    if args.format == "json":
        _emit(json.dumps(data, indent=2) + "\n", args.out)
    else:
        header = ["b", "b_prime", "q", "p"]
        header += [f"re{k}" for k in range(d * d)] + [f"im{k}" for k in range(d * d)]
        rows = [
            [data["b"], data["b_prime"], s["q"], s["p"]]
            + [_fmt(x) for x in s["ket"]["re"]]
            + [_fmt(x) for x in s["ket"]["im"]]
            for s in data["states"]
        ]
        _emit(_csv_text(header, rows), args.out)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    tol = _resolve_tol(args)
    dims = args.d if args.d else list(DEFAULT_DIMS)
    for d in dims:
        validate_dimension(d)
    rows = run_suites(dims, args.suite, tol, args.seed)
    all_pass = all(r.passed for r in rows)
    if args.format == "json":
        payload = {
            "tolerance": tol,
            "seed": args.seed,
            "suite": args.suite,
            "dims": dims,
            "rows": [
                {
                    "check": r.check,
                    "d": r.d,
                    "params": r.params,
                    "max_error": float(_fmt(r.max_error)),
                    "pass": r.passed,
                    **({"runtime_ms": round(r.runtime_ms, 3)} if args.timing else {}),
                }
                for r in rows
            ],
            "all_pass": all_pass,
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        header = ["check", "d", "params", "max_error", "pass"]
        if args.timing:
            header.append("runtime_ms")
        table = []
        for r in rows:
            record = [r.check, r.d, r.params, _fmt(r.max_error), str(r.passed).lower()]
            if args.timing:
                record.append(f"{r.runtime_ms:.3f}")
            table.append(record)
        _emit(_csv_text(header, table), args.out)
    passed = sum(r.passed for r in rows)
    print(f"{passed}/{len(rows)} checks passed (tol={_fmt(tol)})", file=sys.stderr)
    return 0 if all_pass else 1


def _cmd_hop(args: argparse.Namespace) -> int:
    d = validate_dimension(args.d)
    tol = _resolve_tol(args)
    factors = parse_word(args.word)
    start = (args.q % d, args.p % d)
    trajectory = hop_trajectory(d, start, factors)
    symbolic = hop(d, start, factors)
    dense, fidelity = hop_dense(d, start, factors)
    agree = dense == symbolic and abs(fidelity - 1.0) < tol
    if args.format == "json":
        payload = {
            "d": d,
            "word": format_word(factors),
            "start": {"q": start[0], "p": start[1]},
            "trajectory": [
                {
                    "factor": factor,
                    "q": step.point.q,
                    "p": step.point.p,
                    "phase_exponent": step.phase_exponent,
                }
                for factor, step in trajectory
            ],
            "symbolic": {
                "q": symbolic.point.q,
                "p": symbolic.point.p,
                "phase_exponent": symbolic.phase_exponent,
            },
            "dense": {
                "q": dense.point.q,
                "p": dense.point.p,
                "phase_exponent": dense.phase_exponent,
                "fidelity": float(_fmt(fidelity)),
            },
            "agree": agree,
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        header = ["stage", "factor", "q", "p", "phase_exponent", "fidelity", "agree"]
        rows = [
            [f"step{k}", factor, step.point.q, step.point.p, step.phase_exponent, "", ""]
            for k, (factor, step) in enumerate(trajectory)
        ]
        rows.append(
            [
                "symbolic",
                format_word(factors),
                symbolic.point.q,
                symbolic.point.p,
                symbolic.phase_exponent,
                "",
                "",
            ]
        )
        rows.append(
            [
                "dense",
                format_word(factors),
                dense.point.q,
                dense.point.p,
                dense.phase_exponent,
                _fmt(fidelity),
                str(agree).lower(),
            ]
        )
        _emit(_csv_text(header, rows), args.out)
    return 0 if agree else 1


def _cmd_lines(args: argparse.Namespace) -> int:
    d = validate_dimension(args.d)
    tol = _resolve_tol(args)
    realization = "alt" if args.alt_realization else "standard"
    table = line_factor_table(d, tol, realization)
    if args.format == "json":
        payload = {"d": d, "realization": realization, "rows": table}
        for row in payload["rows"]:
            row["max_error"] = float(_fmt(row["max_error"]))
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        header = [
            "d",
            "b",
            "m",
            "schmidt_rank_ok",
            "factor_label_b",
            "factor_label_m",
            "global_phase_exponent",
            "max_error",
        ]
        rows = [
            [
                row["d"],
                row["b"],
                row["m"],
                str(row["schmidt_rank_ok"]).lower(),
                row["factor_label_b"],
                row["factor_label_m"],
                row["global_phase_exponent"],
                _fmt(row["max_error"]),
            ]
            for row in table
        ]
        _emit(_csv_text(header, rows), args.out)
    return 0


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mesphase",
        description=(
            "Generate and exactly verify maximally entangled bases, mutually "
            "unbiased bases, and phase-space line states for odd prime d."
        ),
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, formats=("json", "csv")) -> None:
        p.add_argument("--format", choices=formats, default=formats[0])
        p.add_argument("--out", metavar="FILE", default=None)
        p.add_argument("--tol", type=float, default=None)

    p = sub.add_parser("gen-mub", help="emit the d+1 unbiased bases")
    p.add_argument("--d", type=int, required=True)
    add_common(p)
    p.set_defaults(func=_cmd_gen_mub)

    p = sub.add_parser("gen-mes", help="emit a d^2-element maximally entangled basis")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--b", default="cb", help="basis label for particle 1 ('cb' or 0..d-1)")
    p.add_argument("--b-prime", default="cb", dest="b_prime", help="basis label for particle 2")
    add_common(p)
    p.set_defaults(func=_cmd_gen_mes)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument(
        "--d",
        type=int,
        action="append",
        default=None,
        help="dimension to check; repeatable (default: 3 5 7)",
    )
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--timing", action="store_true", help="include per-row runtime")
    add_common(p, formats=("csv", "json"))
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("hop", help="apply a collective operator word to a lattice point")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--word", default="", help="e.g. 'Xc^2 Xr^6 Zr^-1'")
    add_common(p, formats=("csv", "json"))
    p.set_defaults(func=_cmd_hop)

    p = sub.add_parser("lines", help="tabulate line-state factorizations")
    p.add_argument("--d", type=int, required=True)
    p.add_argument(
        "--alt-realization",
        action="store_true",
        help="sum the conjugate point family instead (exploratory; reported, not asserted)",
    )
    add_common(p, formats=("csv", "json"))
    p.set_defaults(func=_cmd_lines)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return args.func(args)
    except (InvalidDimension, InvalidLabel, WordParseError, NotPrime) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
