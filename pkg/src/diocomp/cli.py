"""``dio`` command line: exit 0 on success, 1 on a domain error, 2 on bad usage."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import compiler as comp
from .errors import DioError, FormatError, RenderError
from .index import describe_class, parse_index, render_index
from .indicator import (
    ExactOne,
    SymbolicLarge,
    f_value,
    family_from_json,
    format_rational,
    inf_estimate,
    parse_point,
)
from .poly import parse_polynomial
from .render import Target, program_constants, render
from .wellformed import assignment_from_json, prefix_from_json


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DioError(f"cannot read {path}: {exc.strerror or exc}") from None


def _nat_list(text: str, n=None):
    try:
        vals = [int(v) for v in text.split(",")]
    except ValueError:
        raise FormatError(f"expected comma-separated naturals, got {text!r}") from None
    if any(v < 0 for v in vals) or (n is not None and len(vals) != n):
        want = f"{n} " if n else ""
        raise FormatError(f"expected {want}comma-separated naturals, got {text!r}")
    return vals


def cmd_compile(args, out):
    src = args.equation if args.equation is not None else _read(args.file).strip()
    p = parse_polynomial(src)
    if args.ce:
        witnesses = _nat_list(args.witnesses) if args.witnesses else None
        prog = comp.compile_ce(p, args.w, witnesses)
        eq = prog.compiled
    else:
        prog = eq = comp.compile_equation(p)
    if args.out:
        Path(args.out).write_text(comp.program_to_json(prog) + "\n", encoding="utf-8")
    out.write(f"B = {render_index(eq.B)}\n")
    out.write(f"C = {render_index(eq.C)}\n")
    out.write(f"A = {render_index(eq.A)}\n")
    if not eq.order_certified:
        out.write("note: B >= C could not be certified; fold order kept\n")
    return 0


def cmd_verify(args, out):
    p = parse_polynomial(args.equation)
    rep = comp.brute_force_verify(p, args.max_val)
    names = ", ".join(f"y{v}" for v in rep.variables) or "(no variables)"
    out.write(f"variables: {names}\n")
    out.write(f"checked {rep.checked} assignments with values <= {args.max_val}\n")
    out.write(f"solutions: {len(rep.solutions)}\n")
    for s in rep.solutions[: args.show]:
        out.write(f"  {s}\n")
    if rep.ok:
        out.write("no counterexamples\n")
        return 0
    out.write(f"COUNTEREXAMPLES: {rep.counterexamples[: args.show]}\n")
    return 1


def cmd_membership(args, out):
    prog = comp.program_from_json(_read(args.program))
    if not isinstance(prog, comp.CeSetProgram):
        raise FormatError(f"{args.program} is an equation program, not a c.e. set program")
    if args.code is not None:
        res = comp.check_code_membership(prog, args.code, args.witness_bound)
    else:
        tup = _nat_list(args.tuple, 9)
        res = comp.check_membership(prog, tup, args.witness_bound)
    if res:
        out.write(f"accept: witness {','.join(map(str, res.witness))}\n")
    else:
        out.write(
            f"no witness with values <= {args.witness_bound} "
            f"({res.searched} searched; not a proof of non-membership)\n"
        )
    return 0


def cmd_pair(args, out):
    if args.x < 0 or args.y < 0:
        raise FormatError("J takes naturals")
    out.write(f"{comp.pair(args.x, args.y)}\n")
    return 0


def cmd_decode(args, out):
    k = parse_index(args.k)
    out.write(describe_class(k) + "\n")
    return 0


def cmd_eval_f(args, out):
    prog = comp.program_from_json(_read(args.program))
    eq = getattr(prog, "compiled", prog)
    text = _read(args.assignment)
    x = parse_point(args.point)
    if args.mode == "dense":
        asg = prefix_from_json(text)
    else:
        asg = assignment_from_json(text)
    v = f_value(x, args.m, asg, eq, mode=args.mode, squared=args.squared)
    if isinstance(v, SymbolicLarge):
        out.write(f"large: certified >= {format_rational(v.lower_bound)} (n_B != n_C)\n")
    else:
        out.write(format_rational(v) + "\n")
    return 0


def cmd_indicator(args, out):
    fam = family_from_json(_read(args.family))
    x = parse_point(args.point)
    res = inf_estimate(fam, args.m, x, args.budget, squared=args.squared)
    if isinstance(res, ExactOne):
        out.write("exact: 1 (point outside U_m)\n")
    else:
        w = ",".join(map(str, res.witness))
        out.write(
            f"upper bound: {format_rational(res.value)} "
            f"(witness {w}; {res.enumerated} tuples enumerated)\n"
        )
    return 0


def cmd_render(args, out):
    constants = None
    if args.program:
        if args.target == "star":
            raise RenderError("(star) uses its own memory layout; a compiled program does not supply D, E, F")
        constants = program_constants(comp.program_from_json(_read(args.program)))
    out.write(render(args.target, args.style, constants))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dio", description="Exponential Diophantine compiler toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compile", help="compile an equation (or a c.e. set with --ce)")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--equation", help="polynomial or 'lhs = rhs'")
    src.add_argument("--file", help="file holding the equation text")
    p.add_argument("--out", help="write the program JSON here")
    p.add_argument("--ce", action="store_true", help="treat the input as r(w, z...) of a c.e. set")
    p.add_argument("--w", type=int, default=1, help="variable index of w (default 1)")
    p.add_argument("--witnesses", help="comma-separated witness variable indices")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("verify", help="brute-force check a compiled equation")
    p.add_argument("--equation", required=True)
    p.add_argument("--max-val", type=int, default=8)
    p.add_argument("--show", type=int, default=20, help="list at most this many solutions")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("membership", help="search witnesses for a tuple")
    p.add_argument("--program", required=True)
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--tuple", help="n1,...,n9")
    which.add_argument("--code", type=int, help="a bare q-code w instead of a tuple")
    p.add_argument("--witness-bound", type=int, required=True)
    p.set_defaults(func=cmd_membership)

    p = sub.add_parser("pair", help="J(x, y) = x + (x + y)^2")
    p.add_argument("x", type=int)
    p.add_argument("y", type=int)
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("decode-index", help="classify a cell index")
    p.add_argument("k")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("eval-f", help="evaluate f_{A,B,C} at a point")
    p.add_argument("--program", required=True)
    p.add_argument("--assignment", required=True)
    p.add_argument("--point", required=True, help="five rationals, comma-separated")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--mode", choices=("dense", "semantic"), default="semantic")
    p.add_argument("--squared", action="store_true", help="use x_k^2 in the paraboloid")
    p.set_defaults(func=cmd_eval_f)

    p = sub.add_parser("indicator", help="estimate inf f = 1 - indicator of U_m")
    p.add_argument("--family", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--point", required=True)
    p.add_argument("--budget", type=int, default=100_000)
    p.add_argument("--squared", action="store_true")
    p.set_defaults(func=cmd_indicator)

    p = sub.add_parser("render", help="print a formula")
    p.add_argument("--target", choices=[t.value for t in Target], required=True)
    p.add_argument("--style", choices=("plain", "latex"), default="plain")
    p.add_argument("--program")
    p.set_defaults(func=cmd_render)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (DioError, ValueError) as exc:
        print(f"dio: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
