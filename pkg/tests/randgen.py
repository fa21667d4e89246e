"""Seeded random objects shared by property tests and the acceptance suite."""

import random
from fractions import Fraction

from localzeta.polys import LaurentPoly
from localzeta.ratfun import CycloFactor, CycloRational


def random_laurent(rng: random.Random, m: int, terms: int = 3, lo: int = -2, hi: int = 2) -> LaurentPoly:
    out = LaurentPoly.zero(m + 1)
    for _ in range(terms):
        exps = [rng.randint(lo, hi) for _ in range(m + 1)]
        out = out + LaurentPoly.monomial(exps, Fraction(rng.randint(-4, 4), rng.randint(1, 3)))
    return out


def random_factor(rng: random.Random, m: int) -> CycloFactor:
    while True:
        a = rng.randint(-2, 3)
        b = tuple(rng.randint(-1, 2) for _ in range(m))
        if a or any(b):
            return CycloFactor(a, b)


def random_cyclo(rng: random.Random, m: int = 1, max_factors: int = 3) -> CycloRational:
    num = random_laurent(rng, m)
    if num.is_zero():
        num = LaurentPoly.one(m + 1)
    return CycloRational(num, [random_factor(rng, m) for _ in range(rng.randint(0, max_factors))])


def one_minus_x_inverse(m: int) -> LaurentPoly:
    return LaurentPoly.one(m + 1) - LaurentPoly.monomial([-1] + [0] * m)


def random_member(rng: random.Random, m: int = 1, max_factors: int = 3) -> CycloRational:
    """An element of the expandable ring: ``h * (1 - X^-1)^k / prod(factors)``
    with ``k`` equal to the number of factors, so the numerator valuation is
    at least the factor count."""
    k = rng.randint(0, max_factors)
    h = random_laurent(rng, m, terms=2, lo=-1, hi=1)
    if h.is_zero():
        h = LaurentPoly.one(m + 1)
    num = h * one_minus_x_inverse(m) ** k
    return CycloRational(num, [random_factor(rng, m) for _ in range(k)])
