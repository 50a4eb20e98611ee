"""Compiler and desk-scale verifier for exponential Diophantine index programs."""

from .compiler import (
    Accept,
    CeSetProgram,
    CompiledEquation,
    NoWitnessFound,
    brute_force_verify,
    check_code_membership,
    check_membership,
    compile_ce,
    compile_equation,
    exp_index,
    pair,
    q_code,
    q_decode,
    sum_index,
)
from .index import classify, encode_power_index, alloc_scratch, parse_index, render_index
from .indicator import Ball, BallFamily, contains_sublevel, f_value, inf_estimate, w_member
from .poly import Polynomial, eval_polynomial, parse_polynomial, split_signs, unit_monomials
from .render import render
from .tower import nat, tower_cmp, tower_eq, tower_eval, tower_from_tree, tower_pow
from .wellformed import WfAssignment, extend, validate_prefix

__version__ = "0.1.0"
