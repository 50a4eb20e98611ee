"""Sparse integer polynomials over the free variables y_k."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Mapping, Tuple

from .errors import (
    MissingAssignmentError,
    NegativeCoefficientError,
    PolynomialSyntaxError,
    ReservedIndexError,
)
from ._intmath import int_to_str, str_to_int
from .index import FREE, REFERENCE, classify

# exponent map as a var-sorted tuple of (var, exp) pairs, exp >= 1
MonoKey = Tuple[Tuple[int, int], ...]


def mono_sort_key(key: MonoKey):
    """Graded lex: total degree, then the ascending list of variable indices."""
    expanded = tuple(v for v, e in key for _ in range(e))
    return (len(expanded), expanded)


def _mono_mul(a: MonoKey, b: MonoKey) -> MonoKey:
    if not a:
        return b
    if not b:
        return a
    out = dict(a)
    for v, e in b:
        out[v] = out.get(v, 0) + e
    return tuple(sorted(out.items()))


@dataclass(frozen=True)
class Monomial:
    coefficient: int
    exponents: MonoKey = ()

    @property
    def degree(self):
        return sum(e for _, e in self.exponents)

    def variables(self):
        """Variable indices with multiplicity, ascending."""
        return [v for v, e in self.exponents for _ in range(e)]

    def evaluate(self, asg: Mapping[int, int]) -> int:
        return self.coefficient * _eval_key(self.exponents, asg)

    def __str__(self):
        return str(Polynomial({self.exponents: self.coefficient}))


def _eval_key(key: MonoKey, asg: Mapping[int, int]) -> int:
    out = 1
    for v, e in key:
        try:
            out *= asg[v] ** e
        except KeyError:
            raise MissingAssignmentError(f"no value assigned to y{v}") from None
    return out


class Polynomial:
    """Immutable sparse polynomial with integer coefficients.

    Terms are stored in canonical (graded lex) order with no zero coefficients,
    so equality is equality of the term maps.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[MonoKey, int] = ()):
        cleaned = {}
        for key, c in dict(terms).items():
            if c:
                merged = {}
                for v, e in key:
                    if e:
                        merged[v] = merged.get(v, 0) + e
                key = tuple(sorted(merged.items()))
                cleaned[key] = cleaned.get(key, 0) + c
        ordered = sorted((k for k, c in cleaned.items() if c), key=mono_sort_key)
        self._terms: Dict[MonoKey, int] = {k: cleaned[k] for k in ordered}
        self._hash = None

    @classmethod
    def const(cls, c: int) -> "Polynomial":
        return cls({(): c})

    @classmethod
    def var(cls, k: int) -> "Polynomial":
        return cls({((k, 1),): 1})

    @property
    def terms(self) -> Mapping[MonoKey, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def variables(self) -> Tuple[int, ...]:
        return tuple(sorted({v for key in self._terms for v, _ in key}))

    @property
    def degree(self) -> int:
        return max((sum(e for _, e in k) for k in self._terms), default=0)

    def __eq__(self, other):
        if isinstance(other, int):
            other = Polynomial.const(other)
        return isinstance(other, Polynomial) and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def _lift(self, other):
        if isinstance(other, int):
            return Polynomial.const(other)
        if isinstance(other, Polynomial):
            return other
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out: Dict[MonoKey, int] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                k = _mono_mul(k1, k2)
                out[k] = out.get(k, 0) + c1 * c2
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be natural")
        out = Polynomial.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def evaluate(self, asg: Mapping[int, int]) -> int:
        return sum(c * _eval_key(k, asg) for k, c in self._terms.items())

    def rename(self, mapping: Mapping[int, int]) -> "Polynomial":
        """Simultaneous variable renaming (unmapped variables are kept)."""
        out = {}
        for key, c in self._terms.items():
            new = {}
            for v, e in key:
                w = mapping.get(v, v)
                new[w] = new.get(w, 0) + e
            nk = tuple(sorted(new.items()))
            out[nk] = out.get(nk, 0) + c
        return Polynomial(out)

    def monomials(self):
        return [Monomial(c, k) for k, c in self._terms.items()]

    def __str__(self):
        return render_polynomial(self)

    def __repr__(self):
        return f"Polynomial({render_polynomial(self)!r})"


def render_polynomial(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for key, c in p.items():
        factors = [f"y{v}" if e == 1 else f"y{v}^{e}" for v, e in key]
        mag = abs(c)
        if not factors:
            body = int_to_str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([int_to_str(mag)] + factors)
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


def eval_polynomial(p: Polynomial, asg: Mapping[int, int]) -> int:
    return p.evaluate(asg)


def split_signs(p: Polynomial):
    """(q0, q1) with nonnegative coefficients and p == q0 - q1."""
    pos = {k: c for k, c in p.items() if c > 0}
    neg = {k: -c for k, c in p.items() if c < 0}
    return Polynomial(pos), Polynomial(neg)


def unit_monomials(p: Polynomial):
    """Each term c*m expanded to c adjacent copies of m, in canonical order."""
    out = []
    for key, c in p.items():
        if c < 0:
            raise NegativeCoefficientError(
                f"term {render_polynomial(Polynomial({key: c}))} has a negative coefficient"
            )
        out.extend([Monomial(1, key)] * c)
    return out


def check_free_variable(k: int, position=None):
    """Reject y_k whose index is the reference cell or a reserved cell."""
    c = classify(k)
    if c == FREE:
        return
    where = f" at position {position}" if position is not None else ""
    if c == REFERENCE:
        raise ReservedIndexError(f"y0{where}: index 0 is the reference cell n_0 = 2")
    raise ReservedIndexError(
        f"y{k}{where}: index {k} = 9+2^{c.i}*3^{c.j} is reserved for n_{c.i}^n_{c.j}"
    )


class _Parser:
    def __init__(self, src: str, check_y: bool):
        self.src = src
        self.pos = 0
        self.check_y = check_y

    def _skip(self):
        while self.pos < len(self.src) and self.src[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self._skip()
        return self.src[self.pos] if self.pos < len(self.src) else ""

    def expect(self, ch):
        if self.peek() != ch:
            found = self.peek() or "end of input"
            raise PolynomialSyntaxError(f"expected {ch!r}, found {found!r}", self.pos)
        self.pos += 1

    def nat(self) -> int:
        self._skip()
        start = self.pos
        while self.pos < len(self.src) and self.src[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            found = self.peek() or "end of input"
            raise PolynomialSyntaxError(f"expected a natural number, found {found!r}", start)
        return str_to_int(self.src[start:self.pos])

    def poly(self) -> Polynomial:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
        out = self.term() * sign
        while self.peek() in ("+", "-"):
            op = self.peek()
            self.pos += 1
            t = self.term()
            out = out + t if op == "+" else out - t
        return out

    def term(self) -> Polynomial:
        out = self.factor()
        while self.peek() == "*":
            self.pos += 1
            out = out * self.factor()
        return out

    def factor(self) -> Polynomial:
        out = self.atom()
        while self.peek() == "^":
            self.pos += 1
            out = out ** self.nat()
        return out

    def atom(self) -> Polynomial:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            inner = self.poly()
            self.expect(")")
            return inner
        if ch == "y":
            at = self.pos
            self.pos += 1
            k = self.nat()
            if self.check_y:
                check_free_variable(k, at)
            return Polynomial.var(k)
        if ch.isdigit():
            return Polynomial.const(self.nat())
        found = ch or "end of input"
        raise PolynomialSyntaxError(f"unexpected {found!r}", self.pos)


def parse_polynomial(src: str, check_y: bool = True) -> Polynomial:
    """Parse ``poly`` or ``poly = poly`` (normalized to lhs - rhs).

    With ``check_y`` (default) every variable must be a free index.
    """
    parser = _Parser(src, check_y)
    lhs = parser.poly()
    if parser.peek() == "=":
        parser.pos += 1
        lhs = lhs - parser.poly()
    if parser.peek():
        raise PolynomialSyntaxError(f"unexpected {parser.peek()!r}", parser.pos)
    return lhs
