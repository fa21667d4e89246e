"""Expansion in powers of ``X - 1`` after ``Y_j -> X^(-s_j)``.

A cyclotomic rational function ``W`` is *expandable* when
``W(X, X^-s_1, ..., X^-s_m)`` is a power series in ``X - 1`` over
``Q(s_1..s_m)``.  The constant term of that series is ``red W``.

Each monomial ``X^a Y^b`` becomes ``X^e`` with ``e = a - <b, s>``, and
``X^e = sum_d binom(e, d) (X - 1)^d``.  A factor ``1 - X^e`` therefore has
valuation exactly one with leading coefficient ``-e``, so a quotient by
``|I|`` factors lies in the ring iff the numerator series vanishes below
order ``|I|``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import NamedTuple, Sequence

from .errors import NotInM
from .polys import LaurentPoly, RatS
from .ratfun import CycloFactor, CycloRational

PolyS = LaurentPoly


@dataclass(frozen=True)
class AffineForm:
    """``a - b_1 s_1 - ... - b_m s_m``, the exponent of ``X`` after substitution."""

    a: int
    b: tuple[int, ...]

    @classmethod
    def of_monomial(cls, exps: Sequence[int]) -> "AffineForm":
        return cls(exps[0], tuple(exps[1:]))

    @classmethod
    def of_factor(cls, fac: CycloFactor) -> "AffineForm":
        return cls(fac.a, tuple(fac.b))

    @property
    def m(self) -> int:
        return len(self.b)

    def poly(self) -> PolyS:
        out = LaurentPoly.const(self.m, self.a)
        for j, bj in enumerate(self.b):
            if bj:
                out = out - LaurentPoly.var(self.m, j) * bj
        return out


def binom_poly(e: AffineForm, d: int) -> PolyS:
    """``e (e - 1) ... (e - d + 1) / d!`` as a polynomial in ``s``."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    ep = e.poly()
    out = LaurentPoly.one(e.m)
    for i in range(d):
        out = out * (ep - i)
    return out * Fraction(1, factorial(d))


class SeriesX1:
    """Truncated series ``sum_{d <= T} c_d (X - 1)^d`` with ``c_d`` in ``Q[s]``."""

    __slots__ = ("T", "coeffs")

    def __init__(self, T: int, coeffs: Sequence[PolyS]):
        if T < 0:
            raise ValueError("truncation order must be nonnegative")
        if len(coeffs) != T + 1:
            raise ValueError(f"expected {T + 1} coefficients, got {len(coeffs)}")
        self.T = T
        self.coeffs = tuple(coeffs)

    @classmethod
    def zero(cls, m: int, T: int) -> "SeriesX1":
        return cls(T, [LaurentPoly.zero(m)] * (T + 1))

    def __add__(self, other: "SeriesX1") -> "SeriesX1":
        T = min(self.T, other.T)
        return SeriesX1(T, [a + b for a, b in zip(self.coeffs[: T + 1], other.coeffs[: T + 1])])

    def __mul__(self, other):
        if isinstance(other, SeriesX1):
            T = min(self.T, other.T)
            out = []
            for d in range(T + 1):
                acc = LaurentPoly.zero(self.coeffs[0].nvars)
                for i in range(d + 1):
                    acc = acc + self.coeffs[i] * other.coeffs[d - i]
                out.append(acc)
            return SeriesX1(T, out)
        return SeriesX1(self.T, [c * other for c in self.coeffs])

    def valuation(self) -> int:
        """Least ``d`` with a nonzero coefficient, or ``T + 1`` if none."""
        for d, c in enumerate(self.coeffs):
            if not c.is_zero():
                return d
        return self.T + 1

    def __repr__(self):
        names = [f"s{j + 1}" for j in range(self.coeffs[0].nvars)]
        return "SeriesX1[" + ", ".join(c.format(names, True) for c in self.coeffs) + "]"


def numerator_series(g: LaurentPoly, T: int) -> SeriesX1:
    """Image of ``g(X, Y)`` under ``Y_j -> X^(-s_j)``, expanded to order ``T``."""
    m = g.nvars - 1
    coeffs = [LaurentPoly.zero(m) for _ in range(T + 1)]
    for exps, c in g.terms.items():
        e = AffineForm.of_monomial(exps)
        for d in range(T + 1):
            coeffs[d] = coeffs[d] + binom_poly(e, d) * c
    return SeriesX1(T, coeffs)


class Membership(NamedTuple):
    in_M: bool
    valuation_gap: int


def check_membership(W: CycloRational) -> Membership:
    size = len(W.factors)
    w = numerator_series(W.num, size).valuation()
    gap = min(w - size, 1)
    return Membership(gap >= 0, gap)


def red(W: CycloRational) -> RatS:
    """Constant term of ``W(X, X^-s)`` as a power series in ``X - 1``."""
    size = len(W.factors)
    series = numerator_series(W.num, size)
    w = series.valuation()
    if w < size:
        raise NotInM(
            f"{W.format()} is not expandable: numerator has (X-1)-adic valuation {w} "
            f"below the {size} cyclotomic factor(s)"
        )
    m = W.m
    if w > size:
        return RatS(LaurentPoly.zero(m))
    den = LaurentPoly.one(m)
    for fac in W.factors:
        den = den * -AffineForm.of_factor(fac).poly()
    return RatS(series.coeffs[size], den).reduced()
