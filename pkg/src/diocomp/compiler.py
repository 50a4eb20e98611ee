"""Compile polynomial equations into reserved-cell programs (B, C, A).

For a monomial m with coefficient 1 the exponent index E_m satisfies
``n[E_m] == 2**m(n)`` in every well-formed sequence; for a polynomial p with
nonnegative coefficients the sum index D_p satisfies ``n[D_p] == 2**2**p(n)``.
An equation p = q0 - q1 = 0 then becomes ``n[B] == n[C]``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from math import isqrt
from typing import List, Optional, Sequence, Tuple

from .errors import CompileError, FormatError
from .index import Index, alloc_scratch, encode_power_index, index_cmp, parse_index, render_index
from .poly import (
    MonoKey,
    Monomial,
    Polynomial,
    parse_polynomial,
    render_polynomial,
    split_signs,
    unit_monomials,
)
from .wellformed import WfAssignment

MAX_UNIT_MONOMIALS = 200_000
PAIRING_DEPTH = 8  # q nests J eight times over y_1..y_9


@lru_cache(maxsize=None)
def _exp_index_key(key: MonoKey) -> Index:
    e = 0
    # peel the smallest variable outermost, so the largest sits innermost
    for k in reversed([v for v, ex in key for _ in range(ex)]):
        e = encode_power_index(e, k)
    return e


def exp_index(m: Monomial) -> Index:
    """E_m with n[E_m] == 2**m(n); E_1 = 0 because n_0 = 2."""
    if m.coefficient != 1:
        raise CompileError("exp_index takes a monomial with coefficient 1")
    return _exp_index_key(m.exponents)


def sum_index(p: Polynomial) -> Index:
    """D_p with n[D_p] == 2**2**p(n), folding the unit monomials in canonical order."""
    total = sum(c for _, c in p.items() if c > 0)
    if total > MAX_UNIT_MONOMIALS:
        raise CompileError(
            f"{total} unit monomials exceed the fold limit {MAX_UNIT_MONOMIALS}"
        )
    d = 0
    for m in unit_monomials(p):
        d = encode_power_index(d, _exp_index_key(m.exponents))
    return d


@dataclass(frozen=True)
class CompiledEquation:
    B: Index
    C: Index
    A: Index
    source: Polynomial
    scratch_vars: Tuple[int, ...] = ()
    # False when B >= C could not be certified and the fold order was kept
    order_certified: bool = True

    def accepts(self, asg: WfAssignment) -> bool:
        return asg.cell(self.B) == asg.cell(self.C)


def program_from_indices(B: Index, C: Index, source: Polynomial = None) -> CompiledEquation:
    """Hand-built program with given B, C (A = 9+2^B*3^C)."""
    return CompiledEquation(B, C, encode_power_index(B, C), source or Polynomial(), ())


def compile_equation(p: Polynomial, scratch_vars: Sequence[int] = ()) -> CompiledEquation:
    q0, q1 = split_signs(p)
    b, c = sum_index(q0), sum_index(q1)
    order = index_cmp(b, c)
    if order is not None and order < 0:
        b, c = c, b
    return CompiledEquation(
        b, c, encode_power_index(b, c), p, tuple(scratch_vars), order is not None
    )


def pair(x: int, y: int) -> int:
    """J(x, y) = x + (x + y)**2."""
    return x + (x + y) ** 2


def pair_poly(x: Polynomial, y: Polynomial) -> Polynomial:
    return x + (x + y) ** 2


def pairing_chain(values: Sequence[int]) -> List[int]:
    """[u_1, ..., u_8] with u_k = J(n_k, u_{k+1}) and u_9 = n_9; u_1 is the q-code."""
    if len(values) != PAIRING_DEPTH + 1:
        raise ValueError("the pairing folds exactly nine values")
    acc = values[-1]
    out = []
    for v in reversed(values[:-1]):
        acc = pair(v, acc)
        out.append(acc)
    return out[::-1]


def q_code(values: Sequence[int]) -> int:
    return pairing_chain(values)[0]


def unpair(c: int):
    """(x, y) with J(x, y) == c, or None when c is not in the range of J."""
    s = isqrt(c)
    x = c - s * s
    if x > s:
        return None
    return x, s - x


def q_decode(code: int):
    """The 9-tuple with q-code ``code``, or None if no tuple has it."""
    out = []
    acc = code
    for _ in range(PAIRING_DEPTH):
        xy = unpair(acc)
        if xy is None:
            return None
        out.append(xy[0])
        acc = xy[1]
    out.append(acc)
    return tuple(out)


@dataclass(frozen=True)
class CeSetProgram:
    """Membership program for {(n_1..n_9) : exists z, r(q(n), z) = 0}.

    ``compiled.source`` is the flattened equation
    ``sum_k (u_k - J(y_k, u_{k+1}))**2 + r(u_1, z)**2`` over y_1..y_9, the
    witness cells ``scratch`` and the pairing cells ``pairing``.
    """

    representation: Polynomial
    compiled: CompiledEquation
    scratch: Tuple[int, ...]
    pairing: Tuple[int, ...]
    w_var: int = 1
    witness_vars: Tuple[int, ...] = ()

    def fill(self, values: Sequence[int], witness: Sequence[int]) -> WfAssignment:
        free = {k + 1: v for k, v in enumerate(values)}
        free.update(zip(self.scratch, witness))
        free.update(zip(self.pairing, pairing_chain(values)))
        return WfAssignment(free)


def flatten_ce(r: Polynomial, w: int, witnesses: Sequence[int]):
    m = len(witnesses)
    zcells = tuple(alloc_scratch(t) for t in range(1, m + 1))
    ucells = tuple(alloc_scratch(m + k) for k in range(1, PAIRING_DEPTH + 1))
    body = Polynomial()
    inner = Polynomial.var(PAIRING_DEPTH + 1)
    for k in range(PAIRING_DEPTH, 0, -1):
        u = Polynomial.var(ucells[k - 1])
        body = body + (u - pair_poly(Polynomial.var(k), inner)) ** 2
        inner = u
    renamed = r.rename({w: ucells[0], **dict(zip(witnesses, zcells))})
    return body + renamed**2, zcells, ucells


def compile_ce(r: Polynomial, w: int = 1, witnesses: Optional[Sequence[int]] = None) -> CeSetProgram:
    """Compile a Diophantine representation r(w, z_1..z_m) of a set of q-codes.

    ``witnesses`` defaults to every variable of r other than ``w``, ascending.
    """
    rvars = set(r.variables())
    if witnesses is None:
        witnesses = sorted(rvars - {w})
    witnesses = tuple(witnesses)
    if w in witnesses:
        raise CompileError(f"y{w} is both the coded input and a witness")
    if len(set(witnesses)) != len(witnesses):
        raise CompileError("witness variables must be distinct")
    stray = rvars - {w} - set(witnesses)
    if stray:
        raise CompileError(f"variables {sorted(stray)} are neither w nor witnesses")
    p, zcells, ucells = flatten_ce(r, w, witnesses)
    compiled = compile_equation(p, zcells + ucells)
    return CeSetProgram(r, compiled, zcells, ucells, w, witnesses)


@dataclass(frozen=True)
class Accept:
    witness: Tuple[int, ...]

    def __bool__(self):
        return True


@dataclass(frozen=True)
class NoWitnessFound:
    searched: int

    def __bool__(self):
        return False


def dovetail(width: int, bound: int):
    """All tuples in [0, bound]^width by increasing maximum, then lexicographically."""
    if width == 0:
        yield ()
        return
    for level in range(bound + 1):
        for t in itertools.product(range(level + 1), repeat=width):
            if max(t) == level:
                yield t


def check_membership(prog: CeSetProgram, values: Sequence[int], witness_bound: int):
    """Search witnesses up to ``witness_bound``; NoWitnessFound is not a proof of absence."""
    values = tuple(values)
    if len(values) != PAIRING_DEPTH + 1 or any(v < 0 for v in values):
        raise ValueError("membership takes nine naturals")
    searched = 0
    for z in dovetail(len(prog.scratch), witness_bound):
        searched += 1
        if prog.compiled.accepts(prog.fill(values, z)):
            return Accept(z)
    return NoWitnessFound(searched)


@lru_cache(maxsize=32)
def _code_program(prog: CeSetProgram) -> CompiledEquation:
    # r itself, with w read from the first pairing cell
    rep = prog.representation.rename(
        {prog.w_var: prog.pairing[0], **dict(zip(prog.witness_vars, prog.scratch))}
    )
    return compile_equation(rep, prog.scratch)


def check_code_membership(prog: CeSetProgram, code: int, witness_bound: int):
    """Witness search for a bare code w, bypassing the tuple pairing.

    Useful for codes outside the range of q (7 and 9 are two such).
    """
    if code < 0:
        raise ValueError("codes are naturals")
    eq = _code_program(prog)
    searched = 0
    for z in dovetail(len(prog.scratch), witness_bound):
        searched += 1
        free = dict(zip(prog.scratch, z))
        free[prog.pairing[0]] = code
        if eq.accepts(WfAssignment(free)):
            return Accept(z)
    return NoWitnessFound(searched)


@dataclass
class VerifyReport:
    variables: Tuple[int, ...]
    checked: int = 0
    solutions: List[Tuple[int, ...]] = field(default_factory=list)
    counterexamples: List[Tuple[int, ...]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def brute_force_verify(p: Polynomial, value_bound: int, prog: CompiledEquation = None) -> VerifyReport:
    """Check p(n) == 0 <=> n[B] == n[C] on every assignment with values <= value_bound."""
    vs = p.variables()
    if len(vs) > 4 or value_bound > 16:
        raise ValueError("brute force is limited to 4 variables and values <= 16")
    prog = prog or compile_equation(p)
    report = VerifyReport(vs)
    for values in itertools.product(range(value_bound + 1), repeat=len(vs)):
        asg_map = dict(zip(vs, values))
        direct = p.evaluate(asg_map) == 0
        compiled = prog.accepts(WfAssignment(asg_map))
        report.checked += 1
        if direct:
            report.solutions.append(values)
        if direct != compiled:
            report.counterexamples.append(values)
    return report


def program_to_json(prog) -> str:
    """Serialize a CompiledEquation or CeSetProgram."""
    ce = prog if isinstance(prog, CeSetProgram) else None
    eq = ce.compiled if ce else prog
    data = {
        "B": render_index(eq.B),
        "C": render_index(eq.C),
        "A": render_index(eq.A),
        "source": render_polynomial(eq.source),
        "scratch": list(ce.scratch if ce else eq.scratch_vars),
    }
    if not eq.order_certified:
        data["order_certified"] = False
    if ce:
        data["pairing"] = list(ce.pairing)
        data["representation"] = render_polynomial(ce.representation)
        data["w"] = ce.w_var
        data["witnesses"] = list(ce.witness_vars)
    return json.dumps(data, indent=2)


def program_from_json(text: str):
    try:
        data = json.loads(text)
        B, C, A = (parse_index(data[k]) for k in ("B", "C", "A"))
        source = parse_polynomial(data["source"], check_y=False)
        scratch = tuple(int(x) for x in data.get("scratch", []))
    except (ValueError, KeyError, TypeError) as exc:
        raise FormatError(f"not a compiled program: {exc}") from None
    if A != encode_power_index(B, C):
        raise FormatError("A does not equal 9+2^B*3^C")
    certified = bool(data.get("order_certified", True))
    if "pairing" not in data:
        return CompiledEquation(B, C, A, source, scratch, certified)
    pairing = tuple(int(x) for x in data["pairing"])
    eq = CompiledEquation(B, C, A, source, scratch + pairing, certified)
    rep = parse_polynomial(data.get("representation", "0"), check_y=False)
    return CeSetProgram(
        rep, eq, scratch, pairing, int(data.get("w", 1)), tuple(data.get("witnesses", ()))
    )
