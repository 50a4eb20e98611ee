"""Exact naturals closed under exponentiation.

Every value is kept in one canonical shape so that equality is structural:

* ``Nat(n)`` when ``n`` has at most ``digit_threshold()`` decimal digits, and
  also for longer ``n`` that are not perfect powers;
* ``Pow(m, e)`` for longer perfect powers, with ``m`` not itself a perfect
  power and ``e >= 2`` canonical in turn.

Build values with :func:`nat` and :func:`tower_pow`; the class constructors do
not normalize.
"""

from __future__ import annotations

import enum

from . import config
from ._intmath import int_to_str, log10_int, min_root, num_digits
from .errors import TowerRepresentationError


class TowerValue:
    __slots__ = ()


class Nat(TowerValue):
    __slots__ = ("value",)

    def __init__(self, value: int):
        self.value = value

    def __eq__(self, other):
        return isinstance(other, Nat) and other.value == self.value

    def __hash__(self):
        return hash(self.value)

    def __repr__(self):
        if num_digits(self.value) > 40:
            return f"Nat(<{num_digits(self.value)} digits>)"
        return f"Nat({self.value})"


class Pow(TowerValue):
    __slots__ = ("base", "exp", "_hash")

    def __init__(self, base: int, exp: TowerValue):
        self.base = base
        self.exp = exp
        self._hash = hash(("pow", base, exp))

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, Pow)
            and self._hash == other._hash
            and self.base == other.base
            and self.exp == other.exp
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        base = int_to_str(self.base) if num_digits(self.base) <= 40 else f"<{num_digits(self.base)} digits>"
        return f"Pow({base}, {self.exp!r})"


ZERO = Nat(0)
ONE = Nat(1)
TWO = Nat(2)


class _BudgetExceeded:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "BudgetExceeded"

    def __bool__(self):
        return False


BudgetExceeded = _BudgetExceeded()


class Ordering(enum.Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"
    UNKNOWN = "unknown"


def nat(n: int) -> TowerValue:
    """Canonical form of a plain natural."""
    if isinstance(n, TowerValue):
        return n
    if n < 0:
        raise ValueError(f"towers hold naturals only, got {n}")
    if n < 4 or num_digits(n) <= config.digit_threshold():
        return Nat(n)
    m, k = min_root(n)
    if k == 1:
        return Nat(n)
    return Pow(m, nat(k))


def _approx_digits(x: TowerValue) -> float:
    if isinstance(x, Nat):
        return num_digits(x.value)
    if isinstance(x.exp, Nat) and x.exp.value.bit_length() < 64:
        return x.exp.value * log10_int(x.base) + 1
    return float("inf")


def _power(m: int, e: TowerValue) -> TowerValue:
    # m >= 2 is not a perfect power; e is canonical
    if e == ZERO:
        return ONE
    if e == ONE:
        return Nat(m)
    if isinstance(e, Nat) and e.value.bit_length() < 64:
        if e.value * log10_int(m) <= config.digit_threshold() + 1:
            v = m**e.value
            if num_digits(v) <= config.digit_threshold():
                return Nat(v)
    return Pow(m, e)


def _base_form(x: TowerValue):
    if isinstance(x, Pow):
        return x.base, x.exp
    m, k = min_root(x.value)
    return m, Nat(k)


def _materialize(x, y, combine, what):
    limit = config.materialize_limit()
    est = _approx_digits(x) + _approx_digits(y)
    if est > limit:
        raise TowerRepresentationError(
            f"{what} of {render_tower(x)} and {render_tower(y)} has no closed "
            f"tower form and exceeds {limit} digits"
        )
    xv = tower_eval(x, limit)
    yv = tower_eval(y, limit)
    if xv is BudgetExceeded or yv is BudgetExceeded:
        raise TowerRepresentationError(f"{what} operands exceed {limit} digits")
    return nat(combine(xv, yv))


def _mul(x: TowerValue, y: TowerValue) -> TowerValue:
    if x == ZERO or y == ZERO:
        return ZERO
    if x == ONE:
        return y
    if y == ONE:
        return x
    if isinstance(x, Nat) and isinstance(y, Nat):
        return nat(x.value * y.value)
    bx, ex = _base_form(x)
    by, ey = _base_form(y)
    if bx == by:
        return _power(bx, _add(ex, ey))
    return _materialize(x, y, lambda a, b: a * b, "product")


def _add(x: TowerValue, y: TowerValue) -> TowerValue:
    if isinstance(x, Nat) and isinstance(y, Nat):
        return nat(x.value + y.value)
    if x == ZERO:
        return y
    if y == ZERO:
        return x
    if x == y:
        return _mul(TWO, x)
    return _materialize(x, y, lambda a, b: a + b, "sum")


def tower_pow(a, b) -> TowerValue:
    """Canonical ``a ** b`` with ``0 ** 0 == 1``.

    Raises TowerRepresentationError when the result needs a sum or product of
    unrelated huge towers (e.g. ``2 * 5**(5**15625)`` as an exponent).
    """
    a = nat(a)
    b = nat(b)
    if b == ZERO:
        return ONE
    if b == ONE:
        return a
    if a == ZERO or a == ONE:
        return a
    m, e = _base_form(a)
    return _power(m, _mul(e, b))


def tower_from_tree(t) -> TowerValue:
    """Build an int / ``("pow", base, exp)`` tree, exponent first.

    ``x^0 = 1`` and ``0^e``, ``1^e`` (e >= 1) are applied before the other
    operand is built, so an unrepresentable subterm they absorb is never needed.
    """
    if not isinstance(t, tuple):
        return nat(t)
    _, base, exp = t
    try:
        e = tower_from_tree(exp)
    except TowerRepresentationError:
        # too big to represent, so certainly >= 1
        b = tower_from_tree(base)
        if b == ZERO or b == ONE:
            return b
        raise
    if e == ZERO:
        return ONE
    return tower_pow(tower_from_tree(base), e)


def tower_eq(a: TowerValue, b: TowerValue) -> bool:
    return nat(a) == nat(b)


def tower_eval(a: TowerValue, digit_budget: int):
    """Exact value if it has at most ``digit_budget`` digits, else BudgetExceeded."""
    if digit_budget < 1:
        raise ValueError("digit_budget must be >= 1")
    a = nat(a)
    if isinstance(a, Nat):
        return a.value if num_digits(a.value) <= digit_budget else BudgetExceeded
    lg = log10_int(a.base)
    # any exponent above max_exp gives more than digit_budget digits
    max_exp = int(digit_budget / lg) + 1
    e = tower_eval(a.exp, num_digits(max_exp))
    if e is BudgetExceeded or e > max_exp or e * lg > digit_budget + 1:
        return BudgetExceeded
    v = a.base**e
    return v if num_digits(v) <= digit_budget else BudgetExceeded


def _cmp_int(x: int, y: int) -> Ordering:
    if x < y:
        return Ordering.LESS
    return Ordering.GREATER if x > y else Ordering.EQUAL


def tower_cmp(a: TowerValue, b: TowerValue, budget: int = 10_000) -> Ordering:
    """Best-effort order; UNKNOWN when no sound rule decides within ``budget`` digits."""
    a, b = nat(a), nat(b)
    if a == b:
        return Ordering.EQUAL
    if isinstance(a, Nat) and isinstance(b, Nat):
        return _cmp_int(a.value, b.value)
    if isinstance(a, Pow) and isinstance(b, Pow) and a.base == b.base:
        return tower_cmp(a.exp, b.exp, budget)
    # a canonical Pow always has more digits than the threshold allows a short Nat
    limit = config.digit_threshold()
    if isinstance(a, Nat) and num_digits(a.value) <= limit:
        return Ordering.LESS
    if isinstance(b, Nat) and num_digits(b.value) <= limit:
        return Ordering.GREATER
    av = tower_eval(a, budget)
    bv = tower_eval(b, budget)
    if av is not BudgetExceeded and bv is not BudgetExceeded:
        return _cmp_int(av, bv)
    return Ordering.UNKNOWN


def render_tower(a: TowerValue) -> str:
    """``NAT`` or ``(base)^(exp)``."""
    if isinstance(a, Nat):
        return int_to_str(a.value)
    return f"({int_to_str(a.base)})^({render_tower(a.exp)})"


def tower_height(a: TowerValue) -> int:
    h = 0
    while isinstance(a, Pow):
        h += 1
        a = a.exp
    return h
