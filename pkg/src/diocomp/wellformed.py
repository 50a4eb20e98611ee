"""Well-formed sequences: n_0 = 2 and n_{9+2^i 3^j} = n_i ** n_j.

A :class:`WfAssignment` stores only the free cells and derives every reserved
cell on demand, so indices far beyond any dense array still work.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from typing import Mapping, Sequence, Union

from .errors import ExtensionError, FormatError, TowerRepresentationError
from .index import FREE, REFERENCE, Index, classify, parse_index, render_index
from .tower import TWO, BudgetExceeded, TowerValue, nat, tower_eval, tower_pow


class WfAssignment:
    """Free-cell values (unassigned free cells read 0) plus a memo of derived cells."""

    def __init__(self, free: Mapping[Index, int] = None):
        cells = {}
        for k, v in dict(free or {}).items():
            if classify(k) != FREE:
                raise ExtensionError(f"cell {render_index(k)} is not free")
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise ExtensionError(f"cell {render_index(k)} must hold a natural, got {v!r}")
            cells[k] = v
        self._free = cells
        self._cache = {}
        self._lock = threading.Lock()

    @property
    def free_cells(self) -> dict:
        return dict(self._free)

    def __eq__(self, other):
        if not isinstance(other, WfAssignment):
            return NotImplemented
        a = {k: v for k, v in self._free.items() if v}
        b = {k: v for k, v in other._free.items() if v}
        return a == b

    def __repr__(self):
        body = ", ".join(f"{render_index(k)}: {v}" for k, v in sorted(self._free.items(), key=str))
        return f"WfAssignment({{{body}}})"

    def with_free(self, updates: Mapping[Index, int]) -> "WfAssignment":
        merged = dict(self._free)
        merged.update(updates)
        return WfAssignment(merged)

    def cell(self, k: Index) -> TowerValue:
        """Value of n_k; reserved cells are derived from lower indices."""
        cache = self._cache
        hit = cache.get(k)
        if hit is not None:
            return hit
        stack = [k]
        while stack:
            top = stack[-1]
            if top in cache:
                stack.pop()
                continue
            c = classify(top)
            if c == REFERENCE:
                val = TWO
            elif c == FREE:
                val = nat(self._free.get(top, 0))
            else:
                pending = [x for x in (c.i, c.j) if x not in cache]
                if pending:
                    stack.extend(pending)
                    continue
                val = tower_pow(cache[c.i], cache[c.j])
            with self._lock:
                # idempotent: every thread computes the same canonical value
                cache.setdefault(top, val)
            stack.pop()
        return cache[k]

    def materialize(self, upto: int, digit_budget: int = 10_000):
        """Dense list n_0..n_upto, or raise if some cell exceeds the budget."""
        out = []
        for k in range(upto + 1):
            v = tower_eval(self.cell(k), digit_budget)
            if v is BudgetExceeded:
                raise TowerRepresentationError(f"cell {k} exceeds {digit_budget} digits")
            out.append(v)
        return out


@dataclass(frozen=True)
class Valid:
    def __bool__(self):
        return True


@dataclass(frozen=True)
class Violation:
    at: int
    expected: TowerValue
    found: int

    def __bool__(self):
        return False


@dataclass(frozen=True)
class PrefixBudgetExceeded:
    at: int

    def __bool__(self):
        return False


VALID = Valid()


def cell(asg: WfAssignment, k: Index) -> TowerValue:
    return asg.cell(k)


def validate_prefix(values: Sequence[int]):
    """Valid, the first Violation by ascending index, or PrefixBudgetExceeded."""
    if not values:
        raise ValueError("a prefix is non-empty")
    for k, found in enumerate(values):
        c = classify(k)
        if c == REFERENCE:
            expected = TWO
        elif c == FREE:
            continue
        else:
            try:
                expected = tower_pow(values[c.i], values[c.j])
            except TowerRepresentationError:
                return PrefixBudgetExceeded(k)
        if nat(found) != expected:
            return Violation(k, expected, found)
    return VALID


def extend(prefix: Union[Sequence[int], Mapping[Index, int]]) -> WfAssignment:
    """Minimal well-formed extension: unmentioned free cells are 0.

    Accepts a dense list n_0..n_A or a sparse ``{index: value}`` map; reference
    and reserved entries must agree with the values they are forced to take.
    """
    items = dict(enumerate(prefix)) if isinstance(prefix, (list, tuple)) else dict(prefix)
    free = {k: v for k, v in items.items() if classify(k) == FREE}
    asg = WfAssignment(free)
    for k, v in items.items():
        if classify(k) == FREE:
            continue
        forced = asg.cell(k)
        if nat(v) != forced:
            raise ExtensionError(
                f"n_{render_index(k)} = {v} contradicts the forced value {forced!r}"
            )
    return asg


def assignment_to_json(asg: WfAssignment) -> str:
    free = {render_index(k): v for k, v in asg.free_cells.items()}
    return json.dumps({"free": free}, indent=2, sort_keys=True)


def assignment_from_json(text: str) -> WfAssignment:
    try:
        data = json.loads(text)
        free = data["free"]
    except (ValueError, KeyError, TypeError) as exc:
        raise FormatError(f"not an assignment file: {exc}") from None
    return WfAssignment({parse_index(k): v for k, v in free.items()})


def prefix_from_json(text: str):
    try:
        data = json.loads(text)
    except ValueError as exc:
        raise FormatError(f"not a JSON array: {exc}") from None
    if not isinstance(data, list) or not all(isinstance(v, int) and v >= 0 for v in data):
        raise FormatError("a dense prefix is a JSON array of naturals")
    return data
