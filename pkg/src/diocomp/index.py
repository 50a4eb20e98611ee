"""Memory layout: reference cell 0, reserved cells 9+2^i*3^j, everything else free."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from . import config
from ._intmath import LOG10_2, LOG10_3, int_to_str, num_digits, str_to_int, strip_factor
from .errors import FormatError


class PowerIndex:
    """Symbolic index ``9 + 2**i * 3**j``, used only when the numeral is too long.

    Build through :func:`encode_power_index` so small values collapse to ints.
    """

    __slots__ = ("i", "j", "_hash", "_heights")

    def __init__(self, i: "Index", j: "Index"):
        self.i = i
        self.j = j
        self._hash = hash(("idx", i, j))
        self._heights = None

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        # iterative along the i-spine: compiled chains nest hundreds deep there
        a, b = self, other
        while True:
            if a is b:
                return True
            if not isinstance(b, PowerIndex) or a._hash != b._hash:
                return False
            if a.j != b.j:
                return False
            a, b = a.i, b.i
            if not isinstance(a, PowerIndex):
                return a == b

    def __repr__(self):
        return f"PowerIndex({render_index(self)})"


Index = Union[int, PowerIndex]


@dataclass(frozen=True)
class ReferenceCell:
    pass


@dataclass(frozen=True)
class ReservedPower:
    i: Index
    j: Index


@dataclass(frozen=True)
class Free:
    pass


REFERENCE = ReferenceCell()
FREE = Free()


def _check_index(k):
    if isinstance(k, bool) or not isinstance(k, (int, PowerIndex)):
        raise TypeError(f"not an index: {k!r}")
    if isinstance(k, int) and k < 0:
        raise ValueError(f"indices are naturals, got {k}")


def encode_power_index(i: Index, j: Index) -> Index:
    """The reserved address ``9 + 2**i * 3**j``."""
    _check_index(i)
    _check_index(j)
    if isinstance(i, int) and isinstance(j, int):
        if i.bit_length() < 64 and j.bit_length() < 64:
            if i * LOG10_2 + j * LOG10_3 <= config.digit_threshold() + 1:
                v = 9 + (3**j << i)
                if num_digits(v) <= config.digit_threshold():
                    return v
    return PowerIndex(i, j)


def classify(k: Index):
    """ReferenceCell, ReservedPower(i, j) or Free."""
    _check_index(k)
    if isinstance(k, PowerIndex):
        return ReservedPower(k.i, k.j)
    if k == 0:
        return REFERENCE
    if k < 10:
        return FREE
    n = k - 9
    i = (n & -n).bit_length() - 1
    rest, j = strip_factor(n >> i, 3)
    if rest == 1:
        return ReservedPower(i, j)
    return FREE


def is_free(k: Index) -> bool:
    return classify(k) == FREE


def alloc_scratch(t: int) -> int:
    """Index of the t-th scratch variable, ``9 + 5t`` (never reserved)."""
    if t < 1:
        raise ValueError("scratch slots are numbered from 1")
    return 9 + 5 * t


def index_digits(k: Index) -> float:
    """Decimal length of k (float, possibly inf for deeply symbolic indices)."""
    if isinstance(k, int):
        return num_digits(k)
    if isinstance(k.i, int) and isinstance(k.j, int) and k.i.bit_length() < 1000:
        return k.i * LOG10_2 + k.j * LOG10_3 + 1
    return float("inf")


_LOG2_3_BOUNDS = (Fraction(15849625007211561, 10**16), Fraction(15849625007211563, 10**16))


# T(0) = 1, T(h+1) = 2**T(h)
_TOWER2 = (1, 2, 4, 16, 65536)


def _int_heights(n: int):
    lo = 0
    while lo + 1 < len(_TOWER2) and n >= _TOWER2[lo + 1]:
        lo += 1
    if n < _TOWER2[-1]:
        hi = next(h for h, t in enumerate(_TOWER2) if n < t)
    else:
        hi = len(_TOWER2) if n.bit_length() <= 65536 else len(_TOWER2) + 1
    return lo, hi


def tower_heights(k: Index):
    """(lo, hi) with T(lo) <= k < T(hi) for the 2-tower T (k >= 1; 0 gives (0, 0)).

    For k = 9+2^i*3^j: k > 2^max(i, j) lifts the lower bound by one, and
    k <= 2^(3m+4) < T(h+2) when m = max(i, j) < T(h), h >= 3.
    """
    if isinstance(k, int):
        return _int_heights(k)
    if k._heights is not None:
        return k._heights
    stack = [k]
    while stack:
        top = stack[-1]
        pending = [x for x in (top.i, top.j) if isinstance(x, PowerIndex) and x._heights is None]
        if pending:
            stack.extend(pending)
            continue
        li, hi_i = tower_heights(top.i)
        lj, hj = tower_heights(top.j)
        top._heights = (max(li, lj) + 1, max(hi_i, hj, 3) + 2)
        stack.pop()
    return k._heights


def index_cmp(a: Index, b: Index):
    """-1, 0, 1, or None when the order cannot be certified."""
    if a == b:
        return 0
    if isinstance(a, int) and isinstance(b, int):
        return -1 if a < b else 1
    # symbolic indices are longer than any numeric one by normalization
    if isinstance(a, int):
        return -1
    if isinstance(b, int):
        return 1
    la, ha = tower_heights(a)
    lb, hb = tower_heights(b)
    if la >= hb:
        return 1
    if lb >= ha:
        return -1
    ci = index_cmp(a.i, b.i)
    cj = index_cmp(a.j, b.j)
    if ci is None or cj is None:
        return None
    if ci >= 0 and cj >= 0:
        return 1 if ci + cj > 0 else 0
    if ci <= 0 and cj <= 0:
        return -1
    # mixed: compare 2^(a.i-b.i) against 3^(b.j-a.j) when all parts are numeric
    if all(isinstance(x, int) for x in (a.i, a.j, b.i, b.j)):
        di, dj = a.i - b.i, b.j - a.j  # same sign; compare 2^di with 3^dj
        lo, hi = _LOG2_3_BOUNDS
        if abs(di) > abs(dj) * hi:
            return 1 if di > 0 else -1
        if abs(di) < abs(dj) * lo:
            return -1 if di > 0 else 1
    return None


def render_index(k: Index) -> str:
    """``NAT`` or ``9+2^(<index>)*3^(<index>)``."""
    memo = {}
    stack = [k]
    while stack:
        top = stack[-1]
        if isinstance(top, int):
            stack.pop()
            continue
        if id(top) in memo:
            stack.pop()
            continue
        pending = [x for x in (top.i, top.j) if isinstance(x, PowerIndex) and id(x) not in memo]
        if pending:
            stack.extend(pending)
            continue
        parts = [int_to_str(x) if isinstance(x, int) else memo[id(x)] for x in (top.i, top.j)]
        memo[id(top)] = f"9+2^({parts[0]})*3^({parts[1]})"
        stack.pop()
    return int_to_str(k) if isinstance(k, int) else memo[id(k)]


def parse_index(text: str) -> Index:
    """Inverse of :func:`render_index`; the result is normalized."""
    s = text.strip()
    pos = 0
    # frames: [i or None]
    frames = []
    value = None
    n = len(s)
    while True:
        if s.startswith("9+2^(", pos):
            frames.append([None])
            pos += 5
            continue
        start = pos
        while pos < n and s[pos].isdigit():
            pos += 1
        if start == pos:
            raise FormatError(f"bad index syntax at position {pos}: {text[:60]!r}")
        value = str_to_int(s[start:pos])
        while True:
            if not frames:
                if pos != n:
                    raise FormatError(f"trailing input at position {pos} in index")
                return value
            frame = frames[-1]
            if frame[0] is None:
                if not s.startswith(")*3^(", pos):
                    raise FormatError(f"expected ')*3^(' at position {pos} in index")
                pos += 5
                frame[0] = value
                break
            if not s.startswith(")", pos):
                raise FormatError(f"expected ')' at position {pos} in index")
            pos += 1
            frames.pop()
            value = encode_power_index(frame[0], value)


def describe_class(k: Index) -> str:
    c = classify(k)
    if c == REFERENCE:
        return "reference cell (n_0 = 2)"
    if c == FREE:
        return "free"
    return f"reserved: 9+2^({render_index(c.i)})*3^({render_index(c.j)})"
