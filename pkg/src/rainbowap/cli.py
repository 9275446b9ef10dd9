"""Command-line front end: construct / check / search / verify-suite / canon.

Colorings travel as a single line of uppercase letters (or the JSON object
form with --format json); witnesses, search outcomes and suite reports are
printed as JSON. Exit codes: 0 success (or nothing found where nothing was
expected), 1 verification failure or a rainbow found under --expect-free,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import IO, Sequence

from . import constructions, harness, search
from .core import (
    Topology,
    canonical_form,
    coloring_from_json_dict,
    enumerate_rainbow_aps,
    find_rainbow_ap,
    letter_index,
    make_coloring,
)
from .errors import RainbowAPError


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rainbowap",
        description="rainbow arithmetic progression toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="emit a rainbow-AP-free coloring")
    p.add_argument("--family", choices=["interval", "z24", "pow3"],
                   default="interval")
    p.add_argument("--n", type=int, help="ground-set size")
    p.add_argument("--k", type=int, default=4, help="number of colors (>= 4)")
    p.add_argument("--variant", choices=[v.value for v in constructions.Variant],
                   default="default")
    p.add_argument("--times", type=int, default=1,
                   help="tile count for --family z24")
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("check", help="look for a rainbow AP in a coloring")
    p.add_argument("--input", help="coloring file (defaults to stdin)")
    p.add_argument("--topology", choices=["interval", "cyclic"],
                   default="interval")
    p.add_argument("--ap", type=int, help="AP length (defaults to k)")
    p.add_argument("--k", type=int, help="number of colors (defaults to "
                   "largest letter present)")
    p.add_argument("--list-all", action="store_true",
                   help="print every witness, not just the first")
    p.add_argument("--expect-free", action="store_true",
                   help="exit 1 if any rainbow AP exists")

    p = sub.add_parser("search", help="search Z_n for a rainbow-free "
                       "equinumerous coloring")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--ap", type=int, help="AP length (defaults to k)")
    p.add_argument("--budget-nodes", type=int, default=5_000_000)
    p.add_argument("--budget-ms", type=int, default=None)
    p.add_argument("--symmetry",
                   choices=[s.value for s in search.SymmetryLevel],
                   default=search.SymmetryLevel.VALUE_ORDER.value)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--certificate-out",
                   help="also write a found certificate here as a text line")

    p = sub.add_parser("verify-suite", help="run a named verification suite")
    p.add_argument("--suite", required=True)
    p.add_argument("--param", action="append", default=[], metavar="KEY=VALUE",
                   help="suite parameter, repeatable")

    p = sub.add_parser("canon", help="print the canonical form of a coloring")
    p.add_argument("--input", help="coloring file (defaults to stdin)")
    p.add_argument("--topology", choices=["interval", "cyclic"],
                   default="interval")
    p.add_argument("--k", type=int)
    p.add_argument("--format", choices=["text", "json"], default="text")
    return parser


def _read_coloring(args, stdin: IO[str]):
    if args.input:
        with open(args.input, "r", encoding="utf-8") as fh:
            text = fh.read().strip()
    else:
        text = stdin.read().strip()
    if text.startswith("{"):
        return coloring_from_json_dict(json.loads(text))
    topology = Topology(args.topology)
    k = args.k
    if k is None:
        if not text:
            raise RainbowAPError("empty coloring input")
        k = max(letter_index(ch) for ch in text) + 1
    return make_coloring(topology, k, text)


def _parse_param(raw: str):
    if "=" not in raw:
        raise RainbowAPError(f"--param expects KEY=VALUE, got {raw!r}")
    key, value = raw.split("=", 1)
    if value.lower() in ("true", "false"):
        return key, value.lower() == "true"
    if "," in value:
        return key, [int(v) for v in value.split(",") if v]
    try:
        return key, int(value)
    except ValueError:
        return key, value


def _cmd_construct(args, out: IO[str]) -> int:
    if args.family == "z24":
        if args.n is not None or args.k != 4:
            raise RainbowAPError("--family z24 takes --times only")
        c = constructions.tile(constructions.construct_z24(), args.times) \
            if args.times > 1 else constructions.construct_z24()
    elif args.family == "pow3":
        if args.n is None:
            raise RainbowAPError("--family pow3 requires --n")
        c = constructions.construct_pow3(args.n)
    else:
        if args.n is None:
            raise RainbowAPError("construct requires --n")
        if args.k == 4:
            c = constructions.construct_interval4(
                args.n, constructions.Variant(args.variant))
        else:
            if args.variant != "default":
                raise RainbowAPError("--variant applies to --k 4 only")
            c = constructions.construct_k(args.k, args.n)
    print(c.to_json() if args.format == "json" else c.letters, file=out)
    return 0


def _cmd_check(args, stdin: IO[str], out: IO[str]) -> int:
    c = _read_coloring(args, stdin)
    length = args.ap if args.ap is not None else c.k
    if args.list_all:
        witnesses = enumerate_rainbow_aps(c, length)
        print(json.dumps([w.to_json_dict() for w in witnesses]), file=out)
        return 1 if (args.expect_free and witnesses) else 0
    witness = find_rainbow_ap(c, length)
    if witness is None:
        print(f"no rainbow AP({length})", file=out)
        return 0
    print(json.dumps(witness.to_json_dict()), file=out)
    return 1 if args.expect_free else 0


def _cmd_search(args, out: IO[str]) -> int:
    config = search.SearchConfig(
        n=args.n,
        k=args.k,
        max_nodes=args.budget_nodes,
        max_ms=args.budget_ms,
        symmetry=search.SymmetryLevel(args.symmetry),
        threads=args.threads,
    )
    outcome = search.search_rainbow_free(config, args.ap or args.k)
    print(json.dumps(outcome.to_json_dict()), file=out)
    if args.certificate_out and outcome.certificate is not None:
        with open(args.certificate_out, "w", encoding="utf-8") as fh:
            fh.write(outcome.certificate.letters + "\n")
    return 0


def _cmd_verify(args, out: IO[str]) -> int:
    params = dict(_parse_param(raw) for raw in args.param)
    report = harness.run_suite(args.suite, params)
    print(report.to_json(), file=out)
    return 0 if report.passed else 1


def _cmd_canon(args, stdin: IO[str], out: IO[str]) -> int:
    c = canonical_form(_read_coloring(args, stdin))
    print(c.to_json() if args.format == "json" else c.letters, file=out)
    return 0


def run(argv: Sequence[str], stdin: IO[str] | None = None,
        stdout: IO[str] | None = None, stderr: IO[str] | None = None) -> int:
    """Parse argv and dispatch; returns the process exit code."""
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        if args.command == "construct":
            return _cmd_construct(args, stdout)
        if args.command == "check":
            return _cmd_check(args, stdin, stdout)
        if args.command == "search":
            return _cmd_search(args, stdout)
        if args.command == "verify-suite":
            return _cmd_verify(args, stdout)
        if args.command == "canon":
            return _cmd_canon(args, stdin, stdout)
    except (RainbowAPError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"rainbowap: error: {exc}", file=stderr)
        return 2
    raise AssertionError(f"unhandled command {args.command!r}")


def main() -> None:
    sys.exit(run(sys.argv[1:]))
