"""Command-line front end: build, add, show, export and bench."""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .cad import MODES, NEW, OLD, export
from .lifting import Lifter, lift, lift_add
from .poly import MultiPoly, PolySyntaxError, UndeclaredVariableError, VarOrder, parse_poly
from .projection import LevelDelta, projection_polys, projection_polys_add
from .session import SessionError, SessionState, load, save

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DEGENERATE = 3
EXIT_UNSUPPORTED_VAR = 4
EXIT_BAD_SESSION = 5


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def read_input(text: str, order_spec: str | None = None) -> tuple[VarOrder, list[MultiPoly]]:
    """Parse an input file: a ``vars: x1 < x2`` header, then one polynomial per line.

    Blank lines and ``#`` comments are ignored.  ``order_spec`` overrides
    (or stands in for) the header.
    """
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((lineno, line))
    if not lines and order_spec is None:
        raise CliError("input is empty", EXIT_DEGENERATE)
    order = None
    if lines and lines[0][1].lower().startswith("vars:"):
        header = lines.pop(0)[1]
        try:
            order = VarOrder.parse(header[5:])
        except ValueError as exc:
            raise CliError(f"bad variable header: {exc}", EXIT_PARSE) from exc
    if order_spec is not None:
        try:
            order = VarOrder.parse(order_spec)
        except ValueError as exc:
            raise CliError(f"bad variable order: {exc}", EXIT_PARSE) from exc
    if order is None:
        raise CliError("missing 'vars: ...' header line", EXIT_PARSE)
    polys = []
    for lineno, line in lines:
        try:
            p = parse_poly(line, order)
        except (PolySyntaxError, UndeclaredVariableError) as exc:
            raise CliError(f"line {lineno}: {exc}", EXIT_PARSE) from exc
        if p.is_zero():
            raise CliError(f"line {lineno}: the zero polynomial has no decomposition", EXIT_DEGENERATE)
        if p.is_constant():
            print(f"line {lineno}: ignoring nonzero constant", file=sys.stderr)
            continue
        polys.append(p)
    if not polys:
        raise CliError("no non-constant polynomials in input", EXIT_DEGENERATE)
    return order, polys


def _counts_line(counts: list[int]) -> str:
    return ", ".join(f"level{k}: {c} cells" for k, c in enumerate(counts, start=1))


def build_state(order: VarOrder, polys: list[MultiPoly], mode: str) -> tuple[SessionState, dict[str, float]]:
    t0 = time.perf_counter()
    table = projection_polys(polys, order)
    t1 = time.perf_counter()
    tree = lift(table, order, mode)
    t2 = time.perf_counter()
    state = SessionState(order, list(polys), table, tree, mode, None)
    return state, {"projection": t1 - t0, "lift": t2 - t1}


def add_to_state(state: SessionState, g: MultiPoly) -> tuple[SessionState, dict[str, float], Lifter]:
    """Incremental projection then incremental lift; ``state`` is not modified."""
    t0 = time.perf_counter()
    if g.is_constant():
        table, delta = state.table, LevelDelta.empty(len(state.order))
    else:
        table, delta = projection_polys_add(state.table, [g], state.order)
    t1 = time.perf_counter()
    lifter = Lifter(table, state.order, state.mode)
    tree = lift_add(delta, table, state.order, state.tree, state.mode, lifter)
    t2 = time.perf_counter()
    inputs = list(state.inputs)
    if not g.is_constant() and g.canonical() not in {p.canonical() for p in inputs}:
        inputs.append(g)
    new_state = SessionState(state.order, inputs, table, tree, state.mode, delta)
    return new_state, {"projection": t1 - t0, "lift": t2 - t1}, lifter


def _load(path: str) -> SessionState:
    try:
        return load(path)
    except SessionError as exc:
        raise CliError(str(exc), EXIT_BAD_SESSION) from exc


def cmd_build(args: argparse.Namespace) -> int:
    path = Path(args.input)
    try:
        text = path.read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_PARSE) from exc
    order, polys = read_input(text, args.order)
    state, times = build_state(order, polys, args.mode)
    out = args.session or str(path.with_suffix(".session.json"))
    save(state, out)
    print(_counts_line(state.tree.counts()))
    print(f"projection: {times['projection']:.3f}s, lift: {times['lift']:.3f}s")
    print(f"session: {out}")
    return EXIT_OK


def cmd_add(args: argparse.Namespace) -> int:
    state = _load(args.session)
    try:
        g = parse_poly(args.poly, state.order)
    except UndeclaredVariableError as exc:
        raise CliError(
            f"{exc}; adding a variable to an existing decomposition is unsupported", EXIT_UNSUPPORTED_VAR
        ) from exc
    except PolySyntaxError as exc:
        raise CliError(str(exc), EXIT_PARSE) from exc
    if g.is_zero():
        raise CliError("the zero polynomial has no decomposition", EXIT_DEGENERATE)
    new_state, times, lifter = add_to_state(state, g)
    cells = list(new_state.tree.all_cells())
    reused = sum(1 for c in cells if c.flag == OLD)
    fresh = sum(1 for c in cells if c.flag == NEW)
    out = args.out or args.session
    save(new_state, out)
    print(_counts_line(new_state.tree.counts()))
    print(f"reused: {reused} cells, new: {fresh} cells")
    print(f"evaluations: {lifter.calls['evaluate']}")
    print(f"projection: {times['projection']:.3f}s, lift: {times['lift']:.3f}s")
    print(f"session: {out}")
    return EXIT_OK


def render(state: SessionState, fmt: str, digits: int | None = None) -> bytes:
    if fmt == "projection":
        return (str(state.table) + "\n").encode()
    return export(state.tree, fmt, digits)


def cmd_show(args: argparse.Namespace) -> int:
    state = _load(args.session)
    data = render(state, args.format, args.digits)
    if getattr(args, "output", None):
        Path(args.output).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="incad", description="Cylindrical algebraic decomposition with incremental updates.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="decompose the polynomials of an input file")
    p.add_argument("input", help="file with a 'vars: x1 < x2' header and one polynomial per line")
    p.add_argument("--order", help="variable order, e.g. 'x1 < x2' (overrides the header)")
    p.add_argument("--mode", choices=MODES, default="full")
    p.add_argument("--session", help="session file to write (default: INPUT with .session.json)")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("add", help="add one polynomial to a session incrementally")
    p.add_argument("poly")
    p.add_argument("--session", required=True)
    p.add_argument("--out", help="write the updated session here instead of in place")
    p.set_defaults(func=cmd_add)

    for name, text in (("show", "print a session's tree, cells or projection"), ("export", "write a session export")):
        p = sub.add_parser(name, help=text)
        p.add_argument("--session", required=True)
        p.add_argument("--format", choices=("dot", "cells", "projection"), default="cells")
        p.add_argument("--digits", type=int, help="show irrational numbers as decimals with this many digits")
        if name == "export":
            p.add_argument("--output", "-o", help="output file (default stdout)")
        p.set_defaults(func=cmd_show)

    # arguments are handed to the bench module's own parser in main()
    sub.add_parser("bench", help="classical versus incremental timing (see 'incad bench --help')", add_help=False)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    if argv and argv[0] == "bench":
        from . import bench

        return bench.main(argv[1:])
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"incad: error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
