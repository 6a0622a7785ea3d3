"""Command-line front door.

Commands compose through files or pipes using the shared JSON forms::

    realizer realize -e "[1/(s+1), s/(s^2-1)]" | realizer minimize | realizer transfer

Exit codes: 0 success, 1 verification failure, 2 input/parse error,
3 semantic error (improper entry, dimension mismatch, bad parameters).
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from .errors import JsonFormatError, ParseError
from .ratfunc import Polynomial, RationalFunction, format_rational
from .tfparse import TransferMatrix, parse_transfer_matrix, print_transfer_matrix
from .statespace import StateSpace, impulse_response, transfer_matrix
from .realize import realize_mimo
from .structure import (
    controllability_matrix,
    kalman_decompose,
    minimal_realization,
    observability_matrix,
    rank_exact,
)

_GROUP_KEYS = ("co_bar_o", "co_o", "unc_unobs", "unc_obs")


def _read_source(args) -> str:
    if getattr(args, "expr", None) is not None:
        return args.expr
    if getattr(args, "file", None) is not None:
        with open(args.file, "r", encoding="utf-8", errors="replace") as fh:
            return fh.read()
    return sys.stdin.read()


def _load_transfer(text: str) -> TransferMatrix:
    """Inline input is grammar text, or the JSON form when it opens with '{'."""
    if text.lstrip().startswith("{"):
        return TransferMatrix.from_json(json.loads(text))
    return parse_transfer_matrix(text)


def _load_statespace(text: str) -> StateSpace:
    return StateSpace.from_json(json.loads(text))


def _emit_json(obj) -> None:
    print(_dumps(obj))


def _dumps(obj, indent: int = 0) -> str:
    """Deterministic JSON: sorted keys, matrix rows kept on one line."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            f'{inner}{json.dumps(key)}: {_dumps(value, indent + 1)}'
            for key, value in sorted(obj.items())
        ]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, list):
        if any(isinstance(x, (dict, list)) for x in obj):
            items = [f"{inner}{_dumps(x, indent + 1)}" for x in obj]
            return "[\n" + ",\n".join(items) + "\n" + pad + "]"
        return json.dumps(obj)
    return json.dumps(obj)


def _emit_statespace(ss: StateSpace, fmt: str) -> None:
    if fmt == "json":
        _emit_json(ss.to_json())
    else:
        print(ss)


def _cmd_realize(args) -> int:
    G = _load_transfer(_read_source(args))
    ss = realize_mimo(G)
    _emit_statespace(ss, args.format)
    return 0


def _cmd_transfer(args) -> int:
    ss = _load_statespace(_read_source(args))
    G = transfer_matrix(ss)
    if args.format == "json":
        _emit_json(G.to_json())
    else:
        print(print_transfer_matrix(G))
    return 0


def _cmd_analyze(args) -> int:
    ss = _load_statespace(_read_source(args))
    kd = kalman_decompose(ss)
    rank_mc = rank_exact(controllability_matrix(ss))
    rank_mo = rank_exact(observability_matrix(ss))
    report = {
        "n": ss.n,
        "inputs": ss.inputs,
        "outputs": ss.outputs,
        "rank_Mc": rank_mc,
        "rank_Mo": rank_mo,
        "controllable": rank_mc == ss.n,
        "observable": rank_mo == ss.n,
        "dims": dict(zip(_GROUP_KEYS, kd.dims)),
        "minimal_dim": kd.dims[1],
    }
    if args.format == "json":
        _emit_json(report)
    else:
        for key in ("n", "inputs", "outputs", "rank_Mc", "rank_Mo",
                    "controllable", "observable", "minimal_dim"):
            print(f"{key}: {report[key]}")
        for key in _GROUP_KEYS:
            print(f"dim {key}: {report['dims'][key]}")
    return 0


def _cmd_decompose(args) -> int:
    ss = _load_statespace(_read_source(args))
    kd = kalman_decompose(ss)
    if args.format == "json":
        _emit_json(kd.to_json())
    else:
        print(f"T =\n{_indent_block(kd.transform)}")
        print(kd.system)
        for key, group in zip(_GROUP_KEYS, kd.groups):
            members = " ".join(str(i) for i in group) if group else "-"
            print(f"{key}: {members}")
    return 0


def _cmd_minimize(args) -> int:
    ss = _load_statespace(_read_source(args))
    _emit_statespace(minimal_realization(ss), args.format)
    return 0


def _cmd_simulate(args) -> int:
    ss = _load_statespace(_read_source(args))
    if args.channel < 1:
        raise ValueError("--channel is 1-based; the first input is channel 1")
    record = impulse_response(ss, args.channel - 1, args.t_end, args.dt)
    sys.stdout.write(record.to_csv())
    return 0


def _cmd_verify(args) -> int:
    if args.seed is not None:
        G = _random_transfer(random.Random(args.seed))
    else:
        G = _load_transfer(_read_source(args))
    ss = realize_mimo(G)
    if os.environ.get("REALIZER_VERIFY_CORRUPT") and ss.n > 0:
        # test hook: spoil one entry of A so the mismatch path is exercised
        spoiled = [list(ss.A.row(i)) for i in range(ss.n)]
        spoiled[0][0] += 1
        from .matrices import Matrix

        ss = StateSpace(A=Matrix(spoiled), B=ss.B, C=ss.C)
    recovered = transfer_matrix(ss)
    ok = True
    for i in range(G.rows):
        for j in range(G.cols):
            want, got = G[i, j], recovered[i, j]
            if want == got:
                print(f"entry ({i + 1},{j + 1}): ok {format_rational(want)}")
            else:
                ok = False
                print(f"entry ({i + 1},{j + 1}): MISMATCH")
                print(f"  expected: {format_rational(want)}")
                print(f"  got:      {format_rational(got)}")
    mini = minimal_realization(ss)
    if transfer_matrix(mini) == G:
        print(f"minimal: ok dimension {ss.n} -> {mini.n}, transfer preserved")
    else:
        ok = False
        print(f"minimal: MISMATCH at dimension {ss.n} -> {mini.n}")
    status = "ok" if ok else "FAILED"
    print(f"verify {status}: {G.rows * G.cols} entries, realization n={ss.n}, minimal n={mini.n}")
    return 0 if ok else 1


def _random_transfer(rng: random.Random) -> TransferMatrix:
    """Seeded strictly proper matrix for verify's randomized mode."""
    m, r = rng.randint(1, 3), rng.randint(1, 3)
    entries = []
    for _ in range(m):
        row = []
        for _ in range(r):
            if rng.random() < 0.2:
                row.append(RationalFunction.zero())
                continue
            d = rng.randint(1, 4)
            den = Polynomial([Fraction(rng.randint(-3, 3)) for _ in range(d)] + [1])
            num = Polynomial(
                [Fraction(rng.randint(-4, 4), rng.choice((1, 2, 3))) for _ in range(d)]
            )
            row.append(RationalFunction(num, den))
        entries.append(row)
    return TransferMatrix(entries)


def _indent_block(obj) -> str:
    return "\n".join("  " + line for line in str(obj).splitlines())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="realizer",
        description="Convert between transfer matrices and state-space models, "
        "analyze structure, and reduce to minimal form.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def transfer_input(p: argparse.ArgumentParser) -> None:
        group = p.add_mutually_exclusive_group()
        group.add_argument("-e", "--expr", help="inline transfer matrix (grammar text or JSON)")
        group.add_argument("-f", "--file", help="read the transfer matrix from this path")

    def statespace_input(p: argparse.ArgumentParser) -> None:
        p.add_argument("-f", "--file", help="read state-space JSON from this path (default: stdin)")

    def format_flag(p: argparse.ArgumentParser, default: str) -> None:
        p.add_argument("--format", choices=("json", "text"), default=default,
                       help=f"output form (default: {default})")

    p = sub.add_parser("realize", help="transfer matrix -> state-space model")
    transfer_input(p)
    format_flag(p, "json")
    p.set_defaults(handler=_cmd_realize)

    p = sub.add_parser("transfer", help="state-space model -> transfer matrix")
    statespace_input(p)
    format_flag(p, "text")
    p.set_defaults(handler=_cmd_transfer)

    p = sub.add_parser("analyze", help="ranks, controllability, observability, group dims")
    statespace_input(p)
    format_flag(p, "json")
    p.set_defaults(handler=_cmd_analyze)

    p = sub.add_parser("decompose", help="Kalman canonical decomposition")
    statespace_input(p)
    format_flag(p, "json")
    p.set_defaults(handler=_cmd_decompose)

    p = sub.add_parser("minimize", help="minimal realization")
    statespace_input(p)
    format_flag(p, "json")
    p.set_defaults(handler=_cmd_minimize)

    p = sub.add_parser("simulate", help="impulse response as CSV")
    statespace_input(p)
    p.add_argument("--channel", type=int, default=1,
                   help="input channel, 1-based (default: 1)")
    p.add_argument("--t-end", type=float, default=2.0, dest="t_end",
                   help="simulation horizon in seconds (default: 2.0)")
    p.add_argument("--dt", type=float, default=1e-3,
                   help="fixed integration step (default: 1e-3)")
    p.set_defaults(handler=_cmd_simulate)

    p = sub.add_parser("verify", help="round-trip self-check: realize, recover, compare")
    group = p.add_mutually_exclusive_group()
    group.add_argument("-e", "--expr", help="inline transfer matrix (grammar text or JSON)")
    group.add_argument("-f", "--file", help="read the transfer matrix from this path")
    group.add_argument("--seed", type=int, help="verify a seeded random matrix instead")
    p.set_defaults(handler=_cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (ParseError, JsonFormatError, json.JSONDecodeError, UnicodeDecodeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def run() -> None:
    try:
        code = main()
        sys.stdout.flush()
    except BrokenPipeError:
        # a downstream consumer (head, etc.) closed the pipe; not our error
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        code = 0
    sys.exit(code)


if __name__ == "__main__":
    run()
