import random
from fractions import Fraction as F

import pytest

from diocomp.compiler import program_from_indices
from diocomp.errors import BudgetError, FormatError
from diocomp.indicator import (
    Ball,
    BallFamily,
    ExactOne,
    ParaboloidParams,
    SymbolicLarge,
    UpperBound,
    contains_sublevel,
    f_value,
    family_from_json,
    family_to_json,
    inf_estimate,
    parse_point,
    sqrt_sum_lt,
    w_candidates,
    w_member,
)
from diocomp.wellformed import WfAssignment
from oracles import interval_contains

ORIGIN = (0, 0, 0, 0, 0)
UNIT = BallFamily.single(ORIGIN, 1)


def params(n3, n4=0, nums=(0, 0, 0, 0, 0)):
    return ParaboloidParams(n3, n4, tuple(nums))


def test_center_and_radius():
    p = params(9, 2, (3, 6, 0, 1, 12))
    assert p.center == (F(-1), F(0), F(-2), F(-5, 3), F(2))
    assert p.radius2 == F(1, 9)
    with pytest.raises(ValueError):
        params(0).radius2


def test_contains_examples():
    assert contains_sublevel(params(4), ORIGIN, 1)
    assert not contains_sublevel(params(1), ORIGIN, 1)
    # d^2 = 1/4, n_3 = 16: 1/2 + 1/4 < 1
    p = params(16, 1, (1, 1, 1, 1, 1))  # center -1/2 in each coordinate
    ball_center = (F(-1), F(-1, 2), F(-1, 2), F(-1, 2), F(-1, 2))
    assert contains_sublevel(p, ball_center, 1)
    assert interval_contains(F(1, 4), 16, F(1)) is True


def test_sqrt_sum_lt_edges():
    assert sqrt_sum_lt(F(1, 4), F(1, 4), F(1) + F(1, 10**30))
    assert not sqrt_sum_lt(F(1, 4), F(1, 4), F(1))
    assert not sqrt_sum_lt(F(0), F(0), F(0))
    assert sqrt_sum_lt(F(0), F(0), F(1, 10**40))
    assert not sqrt_sum_lt(F(2), F(0), F(-1))
    with pytest.raises(ValueError):
        sqrt_sum_lt(F(-1), F(0), F(1))


def test_sqrt_sum_lt_random_against_intervals():
    rng = random.Random(8)
    for _ in range(300):
        a = F(rng.randint(0, 400), rng.randint(1, 100))
        n3 = rng.randint(1, 50)
        r = F(rng.randint(1, 500), rng.randint(1, 50))
        want = interval_contains(a, n3, r)
        if want is not None:
            assert sqrt_sum_lt(a, F(1, n3), r) == want


def test_w_member_examples():
    assert w_member(UNIT, (7, 1, 0, 3, 3, 3, 3, 3, 3))
    assert w_member(UNIT, (0, 0, 16, 0, 0, 0, 0, 0, 0))
    assert not w_member(UNIT, (0, 0, 1, 0, 0, 0, 0, 0, 0))
    assert not w_member(UNIT, (5, 0, 16, 0, 0, 0, 0, 0, 0))  # no U_5
    assert not w_member(UNIT, (0, 0, 0, 0, 0, 0, 0, 0, 0))
    assert not w_member(UNIT, (0, 2, 16, 0, 0, 0, 0, 0, 0))


def test_candidates_enumeration():
    first = []
    for t in w_candidates(0):
        first.append(t)
        if len(first) == 200:
            break
    assert first[0] == (0, 0, 1, 0, 0, 0, 0, 0, 0)
    shells = [t[3] + max(t[2], *t[4:]) for t in first]
    assert shells == sorted(shells)
    assert len(set(first)) == len(first)
    assert all(t[2] >= 1 for t in first)
    # shell 1 has the 1 tuple with n_3 = 1 and all else 0; shell 2 starts with n_4 = 0
    assert first[1][3] == 0 and first[1][2] in (1, 2)


def test_inf_estimate_examples():
    got = inf_estimate(UNIT, 0, ORIGIN, 10**5)
    assert isinstance(got, UpperBound) and got.value <= F(1, 16)
    assert got.value == 0 and w_member(UNIT, got.witness)
    assert isinstance(inf_estimate(UNIT, 0, (3, 0, 0, 0, 0), 10), ExactOne)
    assert isinstance(inf_estimate(UNIT, 4, ORIGIN, 10), ExactOne)


def test_inf_estimate_bounds_and_monotone():
    x = (F(1, 3), F(-1, 5), F(1, 7), 0, F(2, 5))
    prev = F(2)
    for budget in (1, 10, 100, 1000, 5000):
        got = inf_estimate(UNIT, 0, x, budget)
        assert 0 <= got.value <= 1
        assert got.value <= prev
        prev = got.value
        assert w_member(UNIT, got.witness)


def test_inf_estimate_cap_when_budget_tiny():
    fam = BallFamily.single((F(1, 3),) * 5, F(1, 100))
    got = inf_estimate(fam, 0, (F(1, 3),) * 5, 1)
    assert got.value == 1 and got.witness == (0, 1, 0, 0, 0, 0, 0, 0, 0)


def test_inf_estimate_squared_variant():
    fam = BallFamily.single((4, 0, 0, 0, 0), 1)
    # x = (2, 0, ...) squares into U_0 but is not itself in it
    assert isinstance(inf_estimate(fam, 0, (2, 0, 0, 0, 0), 10), ExactOne)
    got = inf_estimate(fam, 0, (2, 0, 0, 0, 0), 20000, squared=True)
    assert isinstance(got, UpperBound) and got.value == 0


def test_family_json_roundtrip():
    fam = BallFamily({0: [Ball((F(1, 2), 0, 0, 0, 0), 1)], 3: [Ball(ORIGIN, F(2, 3)), Ball((1, 1, 1, 1, 1), 5)]})
    text = family_to_json(fam)
    assert '"1/2"' in text
    assert family_from_json(text) == fam
    with pytest.raises(FormatError):
        family_from_json('{"0": []}')
    with pytest.raises(FormatError):
        family_from_json('{"0": [{"center": ["0","0","0","0","0"], "radius": "0"}]}')
    with pytest.raises(FormatError):
        family_from_json('{"0": [{"center": ["0","0"], "radius": "1"}]}')


def test_parse_point():
    assert parse_point("1/2,0,-3,4/6,7") == (F(1, 2), 0, -3, F(2, 3), 7)
    with pytest.raises(FormatError):
        parse_point("1,2")
    with pytest.raises(FormatError):
        parse_point("1,2,3,4,x")


def test_f_value_examples():
    prog = program_from_indices(0, 0)
    asg = WfAssignment({1: 4, 2: 1, 3: 0})
    assert f_value(ORIGIN, 4, asg, prog) == 1
    asg = WfAssignment({1: 4, 2: 0, 3: 9, 4: 1, 5: 1, 6: 2, 7: 3, 8: 0, 9: 1})
    center = ParaboloidParams(9, 1, (1, 2, 3, 0, 1)).center
    assert f_value(center, 4, asg, prog) == 0
    dense = [3] + [0] * 10
    for x in (ORIGIN, (5, 5, 5, 5, 5)):
        assert f_value(x, 0, dense, prog, mode="dense") >= 1


def test_f_value_symbolic_large():
    prog = program_from_indices(1, 0)  # n_1 == n_0 needed
    asg = WfAssignment({1: 3})
    got = f_value(ORIGIN, 3, asg, prog)
    assert isinstance(got, SymbolicLarge) and got.lower_bound == 1
    assert f_value(ORIGIN, 2, WfAssignment({1: 2}), prog) == 0


def test_f_dense_literal_terms():
    prog = program_from_indices(1, 0)  # A = 11
    n = [2, 2, 0, 0, 0, 0, 0, 0, 0, 0, 4, 4]
    assert f_value(ORIGIN, 2, n, prog, mode="dense") == 0
    n[11] = 5  # n_11 should be n_1^n_0 = 4
    assert f_value(ORIGIN, 2, n, prog, mode="dense") == 1
    with pytest.raises(BudgetError):
        f_value(ORIGIN, 2, n[:5], prog, mode="dense")
    from diocomp.compiler import compile_equation
    from diocomp.poly import parse_polynomial
    big = compile_equation(parse_polynomial("y1 - y3"))
    with pytest.raises(BudgetError):
        f_value(ORIGIN, 0, n, big, mode="dense")


def test_semantic_matches_dense_randomized():
    rng = random.Random(12)
    shapes = [(0, 0), (1, 0), (2, 0), (1, 1), (2, 1), (3, 0), (4, 0), (3, 1)]
    for _ in range(300):
        B, C = rng.choice(shapes)
        prog = program_from_indices(B, C)
        assert prog.A <= 40
        free = {k: rng.randint(0, 3) for k in range(1, 10)}
        asg = WfAssignment(free)
        dense = asg.materialize(prog.A)
        x = tuple(F(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(5))
        m = rng.randint(0, 3)
        for squared in (False, True):
            sem = f_value(x, m, asg, prog, squared=squared)
            den = f_value(x, m, dense, prog, mode="dense", squared=squared)
            if isinstance(sem, SymbolicLarge):
                assert den >= sem.lower_bound
            else:
                assert sem == den


def test_f_bad_mode():
    with pytest.raises(ValueError):
        f_value(ORIGIN, 0, [2], program_from_indices(0, 0), mode="fast")
    with pytest.raises(TypeError):
        f_value(ORIGIN, 0, [2], program_from_indices(0, 0))
