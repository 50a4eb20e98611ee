"""Finite open-ball families in Q^5, the tuple set W, and the infimum of f.

Rationals are :class:`fractions.Fraction`.  The paraboloid of a tuple
(n_1, ..., n_9) is ``n_3 * sum_k (x_k - c_k)**2`` with
``c_k = n_{k+5}/(1+n_4) - n_4``; its sublevel set ``<= 1`` is the closed ball
of radius ``n_3**-1/2`` about c.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Sequence, Tuple, Union

from .errors import BudgetError, FormatError
from .index import Index, encode_power_index
from .tower import BudgetExceeded, nat, tower_eq, tower_eval, tower_pow
from .wellformed import WfAssignment

DIM = 5

Point = Tuple[Fraction, ...]


def parse_rational(text) -> Fraction:
    if isinstance(text, bool):
        raise FormatError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"not a rational: {text!r}") from None


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_point(text: str) -> Point:
    parts = [p for p in text.split(",")]
    if len(parts) != DIM:
        raise FormatError(f"a point has {DIM} coordinates, got {len(parts)}")
    return tuple(parse_rational(p) for p in parts)


def _point(x) -> Point:
    x = tuple(Fraction(v) for v in x)
    if len(x) != DIM:
        raise ValueError(f"points live in Q^{DIM}")
    return x


def _dist2(a: Point, b: Point) -> Fraction:
    return sum(((u - v) ** 2 for u, v in zip(a, b)), Fraction(0))


@dataclass(frozen=True)
class Ball:
    center: Point
    radius: Fraction

    def __post_init__(self):
        object.__setattr__(self, "center", _point(self.center))
        object.__setattr__(self, "radius", Fraction(self.radius))
        if self.radius <= 0:
            raise ValueError(f"radius must be positive, got {self.radius}")

    def contains(self, x) -> bool:
        """Open-ball membership, exact."""
        return _dist2(_point(x), self.center) < self.radius**2


def point_in_ball(x, ball: Ball) -> bool:
    return ball.contains(x)


class BallFamily:
    """U_m as a finite non-empty list of open balls, for finitely many m."""

    def __init__(self, balls: Dict[int, Sequence[Ball]]):
        out = {}
        for m, lst in balls.items():
            if isinstance(m, bool) or not isinstance(m, int) or m < 0:
                raise ValueError(f"family keys are naturals, got {m!r}")
            lst = list(lst)
            if not lst:
                raise ValueError(f"U_{m} must be non-empty")
            out[m] = tuple(lst)
        self.balls = out

    def __eq__(self, other):
        return isinstance(other, BallFamily) and self.balls == other.balls

    def __repr__(self):
        return f"BallFamily({self.balls!r})"

    def get(self, m: int):
        return self.balls.get(m, ())

    def contains(self, m: int, x) -> bool:
        return any(b.contains(x) for b in self.get(m))

    @classmethod
    def single(cls, center, radius, m: int = 0) -> "BallFamily":
        return cls({m: [Ball(center, radius)]})


def family_to_json(fam: BallFamily) -> str:
    data = {
        str(m): [
            {"center": [format_rational(c) for c in b.center], "radius": format_rational(b.radius)}
            for b in lst
        ]
        for m, lst in sorted(fam.balls.items())
    }
    return json.dumps(data, indent=2)


def family_from_json(text: str) -> BallFamily:
    try:
        data = json.loads(text)
        balls = {}
        for key, lst in data.items():
            balls[int(key)] = [
                Ball(tuple(parse_rational(c) for c in b["center"]), parse_rational(b["radius"]))
                for b in lst
            ]
        return BallFamily(balls)
    except (AttributeError, KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"not a ball family: {exc}") from None


@dataclass(frozen=True)
class ParaboloidParams:
    n3: int
    n4: int
    numerators: Tuple[int, ...]

    @classmethod
    def from_tuple(cls, t: Sequence[int]) -> "ParaboloidParams":
        """From (n_1, ..., n_9)."""
        return cls(t[2], t[3], tuple(t[4:9]))

    @property
    def center(self) -> Point:
        return tuple(Fraction(n, 1 + self.n4) - self.n4 for n in self.numerators)

    @property
    def radius2(self) -> Fraction:
        if self.n3 < 1:
            raise ValueError("the sublevel set is bounded only for n_3 >= 1")
        return Fraction(1, self.n3)

    def penalty(self, x, squared: bool = False) -> Fraction:
        x = _point(x)
        if squared:
            x = tuple(v * v for v in x)
        return self.n3 * _dist2(x, self.center)


def sqrt_sum_lt(a: Fraction, b: Fraction, r: Fraction) -> bool:
    """Exactly decide sqrt(a) + sqrt(b) < r for rationals a, b >= 0."""
    if a < 0 or b < 0:
        raise ValueError("square roots of negatives")
    if r <= 0:
        return False
    # both sides nonnegative: a + b + 2 sqrt(ab) < r^2
    s = r * r - a - b
    if s <= 0:
        return False
    return 4 * a * b < s * s


def contains_sublevel(p: ParaboloidParams, center, radius) -> bool:
    """Is the closed ball {n_3 |x - c|^2 <= 1} inside the open ball B_radius(center)?"""
    if p.n3 < 1:
        raise ValueError("contains_sublevel needs n_3 >= 1")
    d2 = _dist2(p.center, _point(center))
    return sqrt_sum_lt(d2, p.radius2, Fraction(radius))


def w_member(fam: BallFamily, t: Sequence[int]) -> bool:
    t = tuple(t)
    if len(t) != 9 or any(v < 0 for v in t):
        raise ValueError("W holds 9-tuples of naturals")
    if t[1] == 1 and t[2] == 0:
        return True
    if t[1] != 0 or t[2] == 0:
        return False
    p = ParaboloidParams.from_tuple(t)
    return any(contains_sublevel(p, b.center, b.radius) for b in fam.get(t[0]))


def w_candidates(m: int):
    """Tuples (m, 0, n_3, ..., n_9) with n_3 >= 1, in shells.

    Shell s holds n_4 + max(n_3, n_5..n_9) == s; inside a shell n_4 rises,
    then the max rises, then lexicographic order.  Every tuple shows up in a
    finite position, so every rational center and scale is eventually tried.
    """
    for s in itertools.count(1):
        for n4 in range(s):
            top = s - n4
            for rest in itertools.product(range(top + 1), repeat=6):
                if rest[0] == 0 or max(rest) != top:
                    continue
                yield (m, 0, rest[0], n4) + rest[1:]


@dataclass(frozen=True)
class ExactOne:
    """x is outside U_m, so every tuple gives f >= 1 and the infimum is 1."""

    value = Fraction(1)


@dataclass(frozen=True)
class UpperBound:
    value: Fraction
    witness: Tuple[int, ...]
    enumerated: int = 0


def cap_tuple(m: int) -> Tuple[int, ...]:
    return (m, 1, 0, 0, 0, 0, 0, 0, 0)


def inf_estimate(fam: BallFamily, m: int, x, budget: int, squared: bool = False):
    """ExactOne, or the least W-penalty among the first ``budget`` candidates.

    The cap tuple (m, 1, 0, ...) always bounds the infimum by 1.  With
    ``squared`` the paraboloid reads x_k**2, so U_m is tested at (x_k**2).
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    x = _point(x)
    probe = tuple(v * v for v in x) if squared else x
    if not fam.contains(m, probe):
        return ExactOne()
    best, witness = Fraction(1), cap_tuple(m)
    balls = fam.get(m)
    n = 0
    for t in w_candidates(m):
        if n >= budget:
            break
        n += 1
        p = ParaboloidParams.from_tuple(t)
        pen = p.penalty(x, squared)
        if pen >= best:
            continue
        if any(contains_sublevel(p, b.center, b.radius) for b in balls):
            best, witness = pen, t
            if best == 0:
                break
    return UpperBound(best, witness, n)


class _SymbolicLarge:
    """A certified value >= ``lower_bound`` (at least 1); exact value not kept."""

    __slots__ = ("lower_bound",)

    def __init__(self, lower_bound: Fraction):
        self.lower_bound = lower_bound

    def __repr__(self):
        return f"SymbolicLarge(>= {format_rational(self.lower_bound)})"

    def __eq__(self, other):
        return isinstance(other, _SymbolicLarge) and other.lower_bound == self.lower_bound

    def __hash__(self):
        return hash(("large", self.lower_bound))


SymbolicLarge = _SymbolicLarge


def _paraboloid_term(x: Point, n: Sequence[int], squared: bool) -> Fraction:
    return ParaboloidParams(n[3], n[4], tuple(n[5:10])).penalty(x, squared)


def _dense_cell_count(A: Index) -> int:
    if not isinstance(A, int):
        raise BudgetError("A is symbolic; a dense prefix n_0..n_A cannot exist")
    return A + 1


def f_value(x, m: int, asg, prog, mode: str = "semantic", squared: bool = False,
            digit_budget: int = 10_000) -> Union[Fraction, _SymbolicLarge]:
    """Evaluate f_{A,B,C} at (x, m, n).

    ``dense``: ``asg`` is the list n_0..n_A; every term is computed literally,
    and reserved terms whose index exceeds A are left out.  ``semantic``:
    ``asg`` is a WfAssignment, so the well-formedness terms vanish and
    (n_B - n_C)**2 is either 0 or a SymbolicLarge.
    """
    x = _point(x)
    if mode == "dense":
        return _f_dense(x, m, list(asg), prog, squared, digit_budget)
    if mode != "semantic":
        raise ValueError(f"mode is 'dense' or 'semantic', got {mode!r}")
    if not isinstance(asg, WfAssignment):
        raise TypeError("semantic mode takes a WfAssignment")
    n = [asg.cell(k) for k in range(10)]
    small = [tower_eval(v, digit_budget) for v in n[1:10]]
    if any(v is BudgetExceeded for v in small):
        raise BudgetError("cells n_1..n_9 must be numeric")
    n = [2] + small
    rest = (n[1] - m) ** 2 + n[2] + _paraboloid_term(x, n, squared)
    if tower_eq(asg.cell(prog.B), asg.cell(prog.C)):
        return Fraction(rest)
    return SymbolicLarge(Fraction(rest) + 1)


def _f_dense(x, m, n, prog, squared, digit_budget) -> Fraction:
    size = _dense_cell_count(prog.A)
    if len(n) < size:
        raise BudgetError(f"dense mode needs n_0..n_{size - 1}, got {len(n)} cells")
    B, C = prog.B, prog.C
    total = Fraction((n[0] - 2) ** 2 + (n[1] - m) ** 2 + n[2] + (n[B] - n[C]) ** 2)
    total += _paraboloid_term(x, n, squared)
    for i in range(B + 1):
        for j in range(B + 1):
            k = encode_power_index(i, j)
            if not isinstance(k, int) or k >= size:
                continue
            power = tower_pow(nat(n[i]), nat(n[j]))
            if power == nat(n[k]):
                continue
            v = tower_eval(power, digit_budget)
            if v is BudgetExceeded:
                raise BudgetError(f"n_{i}^n_{j} exceeds {digit_budget} digits")
            total += (n[k] - v) ** 2
    return total
