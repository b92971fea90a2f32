"""Command-line entry point.

Subcommands: solve, bounds, oracle, encode, decode, check, report.
Input is a JSON source specification {"symbols": [{"id", "weight",
"length"?}, ...]}; documents go to standard output, diagnostics to
standard error.  Exit codes: 0 success, 2 infeasible pinned lengths,
1 anything else.  JSON output is byte-stable: fixed key order and floats
printed with 12 significant digits.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .bounds import BoundsReport, constrained_entropy
from .codec import decode, encode, read_stream, write_stream
from .model import (
    InfeasibleConstraintsError,
    SourceSpec,
    SpecError,
    parse_spec,
    require_feasible,
)
from .oracle import (
    OracleBudgetError,
    OracleResult,
    contiguous_partition_solve,
    exhaustive_division_solve,
)
from .solver import Solution, solve
from .stubs import free_stub_levels


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; 2 is reserved for infeasibility."""

    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _load_spec(path: str) -> SourceSpec:
    return parse_spec(_read_text(path))


def _stable(value):
    """Round floats to 12 significant digits, recursively."""
    if isinstance(value, float):
        return float(f"{value:.12g}")
    if isinstance(value, dict):
        return {k: _stable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_stable(v) for v in value]
    return value


def _dump(document) -> str:
    return json.dumps(_stable(document), indent=2) + "\n"


def _emit(args, text: str) -> None:
    if getattr(args, "output", None):
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def solution_document(sol: Solution) -> dict:
    return {
        "codebook": [
            {"id": sym.id, "code": sol.codebook[sym.id]} for sym in sol.spec.symbols
        ],
        "expected_length": sol.expected_length,
        "entropy": sol.bounds.entropy,
        "constrained_entropy": sol.bounds.constrained_entropy,
        "witness_cost": sol.bounds.witness_cost,
        "partition": [
            {"stub_level": span.stub_level, "from": span.first, "to": span.last}
            for span in sol.partition
        ],
    }


def bounds_document(report: BoundsReport) -> dict:
    return {
        "entropy": report.entropy,
        "big_P": report.big_P,
        "big_Q": report.big_Q,
        "constrained_entropy": report.constrained_entropy,
        "redundancy_constraint_term": report.redundancy_constraint_term,
        "redundancy_partition_term": report.redundancy_partition_term,
        "ideal_lengths": list(report.ideal_lengths),
        "witness_lengths": list(report.witness_lengths),
        "witness_cost": report.witness_cost,
    }


def oracle_document(spec: SourceSpec, result: OracleResult) -> dict:
    report = constrained_entropy(spec)
    levels = free_stub_levels(spec).levels
    unconstrained_ids = [spec.symbols[i].id for i in spec.unconstrained_indices]
    return {
        "codebook": [
            {"id": sym.id, "code": result.codebook[sym.id]} for sym in spec.symbols
        ],
        "expected_length": result.best_cost,
        "entropy": report.entropy,
        "constrained_entropy": report.constrained_entropy,
        "witness_cost": report.witness_cost,
        "assignment": [
            {"id": sym_id, "stub_level": levels[k]}
            for sym_id, k in zip(unconstrained_ids, result.best_assignment)
        ],
        "evaluations": result.evaluations,
        "unconstrained_cost": result.unconstrained_cost,
    }


def _solution_table(sol: Solution) -> str:
    spec = sol.spec
    lines = [f"{'id':<14}{'probability':>12}{'pinned':>8}  {'code':<18}{'length':>7}"]
    for i, sym in enumerate(spec.symbols):
        pin = sym.length if sym.length is not None else "-"
        code = sol.codebook[sym.id]
        lines.append(
            f"{sym.id:<14}{spec.probabilities[i]:>12.4f}{pin:>8}  {code:<18}{len(code):>7}"
        )
    lines.append("")
    for label, value in [
        ("expected_length", sol.expected_length),
        ("entropy", sol.bounds.entropy),
        ("constrained_entropy", sol.bounds.constrained_entropy),
        ("witness_cost", sol.bounds.witness_cost),
        ("gap", sol.gap),
    ]:
        lines.append(f"{label:<22}{value:.4f}")
    return "\n".join(lines) + "\n"


def _bounds_table(spec: SourceSpec, report: BoundsReport) -> str:
    lines = [f"{'id':<14}{'probability':>12}{'pinned':>8}{'ideal':>10}{'witness':>9}"]
    for i, sym in enumerate(spec.symbols):
        pin = sym.length if sym.length is not None else "-"
        lines.append(
            f"{sym.id:<14}{spec.probabilities[i]:>12.4f}{pin:>8}"
            f"{report.ideal_lengths[i]:>10.4f}{report.witness_lengths[i]:>9}"
        )
    lines.append("")
    for label, value in [
        ("entropy", report.entropy),
        ("big_P", report.big_P),
        ("big_Q", report.big_Q),
        ("constrained_entropy", report.constrained_entropy),
        ("redundancy_constraint_term", report.redundancy_constraint_term),
        ("redundancy_partition_term", report.redundancy_partition_term),
        ("witness_cost", report.witness_cost),
    ]:
        lines.append(f"{label:<28}{value:.4f}")
    return "\n".join(lines) + "\n"


def _cmd_solve(args) -> int:
    spec = _load_spec(args.input)
    sol = solve(spec)
    if args.debug_stubs:
        stub_doc = [{"level": s.level, "prefix": s.prefix} for s in sol.stubs.stubs]
        print(json.dumps(stub_doc), file=sys.stderr)
    if args.dot:
        from .report import to_dot

        Path(args.dot).write_text(to_dot(sol))
    if args.format == "json":
        _emit(args, _dump(solution_document(sol)))
    else:
        _emit(args, _solution_table(sol))
    return 0


def _cmd_bounds(args) -> int:
    spec = _load_spec(args.input)
    report = constrained_entropy(spec)
    if args.format == "json":
        _emit(args, _dump(bounds_document(report)))
    else:
        _emit(args, _bounds_table(spec, report))
    return 0


def _cmd_oracle(args) -> int:
    spec = _load_spec(args.input)
    runner = (
        exhaustive_division_solve
        if args.mode == "divisions"
        else contiguous_partition_solve
    )
    result = runner(spec, budget=args.budget)
    document = oracle_document(spec, result)
    if args.format == "json":
        _emit(args, _dump(document))
    else:
        lines = [f"best_cost        {result.best_cost:.4f}"]
        lines.append(f"unconstrained    {result.unconstrained_cost:.4f}")
        lines.append(f"evaluations      {result.evaluations}")
        for entry in document["assignment"]:
            lines.append(f"  {entry['id']:<14} stub_level {entry['stub_level']}")
        _emit(args, "\n".join(lines) + "\n")
    return 0


def _cmd_encode(args) -> int:
    spec = _load_spec(args.input)
    sol = solve(spec)
    tokens = _read_text(args.message).split()
    stream = encode(sol.codebook, tokens)
    with open(args.output, "wb") as fp:
        write_stream(fp, stream, len(tokens))
    print(
        f"wrote {args.output}: {len(tokens)} symbols in {stream.bit_count} bits",
        file=sys.stderr,
    )
    return 0


def _cmd_decode(args) -> int:
    spec = _load_spec(args.input)
    sol = solve(spec)
    with open(args.stream, "rb") as fp:
        stream, count = read_stream(fp)
    tokens = decode(sol.codebook, stream, count)
    text = "\n".join(tokens) + ("\n" if tokens else "")
    _emit(args, text)
    return 0


def _load_codebook_document(path: str) -> dict[str, str]:
    try:
        data = json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise SpecError(f"malformed JSON codebook: {exc}") from None
    if isinstance(data, dict) and "codebook" in data:
        data = data["codebook"]
    book: dict[str, str] = {}
    if isinstance(data, list):
        for entry in data:
            if not isinstance(entry, dict) or "id" not in entry or "code" not in entry:
                raise SpecError("codebook entries need 'id' and 'code'")
            book[str(entry["id"])] = str(entry["code"])
    elif isinstance(data, dict):
        book = {str(k): str(v) for k, v in data.items()}
    else:
        raise SpecError("codebook must be a list of entries or an id-to-code map")
    for code in book.values():
        if code.strip("01") != "":
            raise SpecError(f"code word {code!r} is not a bit string")
    return book


def _cmd_check(args) -> int:
    spec = _load_spec(args.input)
    require_feasible(spec)
    book = _load_codebook_document(args.codebook)
    results = []

    want = {sym.id for sym in spec.symbols}
    got = set(book)
    results.append(
        ("coverage", want == got, "codebook ids match the source specification")
    )

    codes = sorted(book.values())
    clash = next(
        (
            (a, b)
            for a, b in zip(codes, codes[1:])
            if b.startswith(a)
        ),
        None,
    )
    results.append(
        (
            "prefix-free",
            clash is None,
            "no code word is a prefix of another"
            if clash is None
            else f"{clash[0]!r} is a prefix of {clash[1]!r}",
        )
    )

    kraft = sum(Fraction(1, 2 ** len(c)) for c in book.values())
    results.append(("kraft", kraft <= 1, f"sum of 2^-length = {kraft}"))

    bad_pins = [
        sym.id
        for sym in spec.symbols
        if sym.length is not None
        and sym.id in book
        and len(book[sym.id]) != sym.length
    ]
    results.append(
        (
            "pinned-lengths",
            not bad_pins,
            "every pinned length is honored"
            if not bad_pins
            else f"wrong length for {', '.join(bad_pins)}",
        )
    )

    ok = all(passed for _, passed, _ in results)
    for name, passed, detail in results:
        print(f"{'PASS' if passed else 'FAIL'} {name}: {detail}")
    print(f"RESULT {'PASS' if ok else 'FAIL'}")
    return 0 if ok else 1


def _cmd_report(args) -> int:
    spec = _load_spec(args.input)
    sol = solve(spec)
    from .report import write_report

    for path in write_report(sol, Path(args.out_dir)):
        print(f"wrote {path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="huffpin",
        description="Optimal binary prefix codes with per-symbol pinned lengths.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_input(p):
        p.add_argument(
            "input", nargs="?", default="-", help="source spec JSON path, - for stdin"
        )

    def add_format(p):
        p.add_argument("--format", choices=("json", "table"), default="json")
        p.add_argument("-o", "--output", help="write the document here, not stdout")

    p = sub.add_parser("solve", help="compute an optimal pinned-length code")
    add_input(p)
    add_format(p)
    p.add_argument("--dot", metavar="PATH", help="also write the code tree as DOT")
    p.add_argument(
        "--debug-stubs",
        action="store_true",
        help="print the free stubs as JSON on stderr",
    )
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("bounds", help="entropy bounds and the witness code")
    add_input(p)
    add_format(p)
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("oracle", help="brute-force reference solver (slow)")
    add_input(p)
    add_format(p)
    p.add_argument("--mode", choices=("divisions", "partitions"), default="divisions")
    p.add_argument("--budget", type=int, default=10**6)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("encode", help="encode whitespace-separated symbol ids")
    add_input(p)
    p.add_argument("message", help="text file of symbol ids, - for stdin")
    p.add_argument("-o", "--output", required=True, help="stream file to write")
    p.set_defaults(func=_cmd_encode)

    p = sub.add_parser("decode", help="decode a stream file")
    add_input(p)
    p.add_argument("stream", help="stream file written by encode")
    p.add_argument("-o", "--output", help="write decoded ids here, not stdout")
    p.set_defaults(func=_cmd_decode)

    p = sub.add_parser("check", help="validate a codebook against a spec")
    add_input(p)
    p.add_argument("codebook", help="codebook JSON: solve output, list, or map")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("report", help="write CSV and figures for an instance")
    add_input(p)
    p.add_argument("--out-dir", required=True, help="directory for the report files")
    p.set_defaults(func=_cmd_report)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except InfeasibleConstraintsError as exc:
        print(f"impossible: {exc}", file=sys.stderr)
        return 2
    except (SpecError, OracleBudgetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(run())
