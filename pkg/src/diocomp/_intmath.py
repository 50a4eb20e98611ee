"""Big-integer helpers backed by gmpy2."""

import math
from functools import lru_cache

import gmpy2

LOG10_2 = math.log10(2)
LOG10_3 = math.log10(3)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13)


@lru_cache(maxsize=512)
def pow10(k: int) -> int:
    return 10**k


def num_digits(n: int) -> int:
    """Exact decimal length of a natural (0 has one digit)."""
    if n < 10:
        return 1
    d = int(gmpy2.num_digits(n, 10))  # exact or one too large
    if n < pow10(d - 1):
        d -= 1
    return d


def log10_int(n: int) -> float:
    # math.log10 accepts arbitrarily large ints
    return math.log10(n)


def _prime_factors(g: int):
    out = []
    p = 2
    while p * p <= g:
        while g % p == 0:
            out.append(p)
            g //= p
        p += 1
    if g > 1:
        out.append(g)
    return out


@lru_cache(maxsize=8192)
def min_root(n: int):
    """Return (m, k) with n == m**k and k maximal; m is then not a perfect power."""
    if n < 4:
        return n, 1
    mn = gmpy2.mpz(n)
    if not gmpy2.is_power(mn):
        return n, 1
    # Any exponent k with n == a**k divides every small-prime valuation of n.
    g = 0
    for p in _SMALL_PRIMES:
        if mn % p == 0:
            g = math.gcd(g, int(gmpy2.remove(mn, p)[1]))
    k = 1
    if g:
        for p in _prime_factors(g):
            r, exact = gmpy2.iroot(mn, p)
            if exact:
                mn, k = r, k * p
        return int(mn), k
    p = 2
    while p <= mn.bit_length() and gmpy2.is_power(mn):
        r, exact = gmpy2.iroot(mn, p)
        if exact:
            mn, k = r, k * p
        else:
            p = int(gmpy2.next_prime(p))
    return int(mn), k


def is_perfect_power(n: int) -> bool:
    return n >= 4 and min_root(n)[1] > 1


def strip_factor(n: int, p: int):
    """Return (rest, v) with n == rest * p**v and p not dividing rest."""
    if n == 0:
        return 0, 0
    rest, v = gmpy2.remove(n, p)
    return int(rest), int(v)


def int_to_str(n: int) -> str:
    # gmpy2 is not subject to the interpreter's int/str digit limit
    return str(n) if -10**300 < n < 10**300 else gmpy2.mpz(n).digits(10)


def str_to_int(s: str) -> int:
    return int(s) if len(s) < 300 else int(gmpy2.mpz(s, 10))
