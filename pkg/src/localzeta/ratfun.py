"""Rational functions in X, Y_1..Y_m with cyclotomic-product denominators.

A :class:`CycloRational` is ``g / prod_i (1 - X^a_i Y^b_i)`` with ``g`` a
Laurent polynomial over Q.  Variable 0 of every numerator is ``X``,
variable ``j`` is ``Y_j``.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ._parse import const_value, parse_expr
from .errors import DegenerateFactor, ParseError
from .polys import LaurentPoly, RationalFunction, RatY, format_coeff, product


@dataclass(frozen=True, order=True)
class CycloFactor:
    """The factor ``1 - X^a * Y_1^b_1 * ... * Y_m^b_m``."""

    a: int
    b: tuple[int, ...]

    def __post_init__(self):
        if self.a == 0 and not any(self.b):
            raise DegenerateFactor("cyclotomic factor 1 - X^0*Y^0 vanishes identically")

    @property
    def exps(self) -> tuple[int, ...]:
        return (self.a,) + tuple(self.b)

    def poly(self) -> LaurentPoly:
        n = len(self.b) + 1
        return LaurentPoly.one(n) - LaurentPoly.monomial(self.exps)

    def format(self, names: Sequence[str]) -> str:
        mono = LaurentPoly.monomial(self.exps).format(names)
        return f"1 - {mono}"


def var_names(m: int) -> list[str]:
    return ["X"] + [f"Y{j + 1}" for j in range(m)]


class CycloRational:
    """Immutable ``numerator / prod(factors)``; ``factors`` is a sorted multiset."""

    __slots__ = ("m", "num", "factors")

    def __init__(self, num: LaurentPoly, factors: Sequence[CycloFactor] = ()):
        self.m = num.nvars - 1
        if self.m < 0:
            raise ValueError("numerator must contain the X variable")
        for fac in factors:
            if len(fac.b) != self.m:
                raise ValueError("factor arity does not match numerator")
        self.num = num
        self.factors = tuple(sorted(factors))

    # -- constructors ------------------------------------------------------

    @classmethod
    def const(cls, m: int, c) -> "CycloRational":
        return cls(LaurentPoly.const(m + 1, c))

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1) -> "CycloRational":
        return cls(LaurentPoly.monomial(exps, c))

    @classmethod
    def X(cls, m: int) -> "CycloRational":
        return cls(LaurentPoly.var(m + 1, 0))

    @classmethod
    def Y(cls, m: int, j: int = 1) -> "CycloRational":
        return cls(LaurentPoly.var(m + 1, j))

    # -- structure ---------------------------------------------------------

    @property
    def nvars(self) -> int:
        return self.m + 1

    def denominator(self) -> LaurentPoly:
        return product((fac.poly() for fac in self.factors), self.nvars)

    def factor_counts(self) -> Counter:
        return Counter(self.factors)

    def to_rational_function(self) -> RationalFunction:
        return RationalFunction(self.num, self.denominator())

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, CycloRational):
            if other.m != self.m:
                raise ValueError(f"arity mismatch: m={self.m} vs m={other.m}")
            return other
        if isinstance(other, LaurentPoly):
            return CycloRational(other)
        if isinstance(other, (int, Fraction)):
            return CycloRational.const(self.m, other)
        return NotImplemented

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloRational(self.num * other.num, self.factors + other.factors)

    __rmul__ = __mul__

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        c1, c2 = self.factor_counts(), other.factor_counts()
        union = c1 | c2
        n1 = self.num * product((f.poly() ** k for f, k in (union - c1).items()), self.nvars)
        n2 = other.num * product((f.poly() ** k for f, k in (union - c2).items()), self.nvars)
        return CycloRational(n1 + n2, list(union.elements()))

    __radd__ = __add__

    def __neg__(self):
        return CycloRational(-self.num, self.factors)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not cyclotomic in general")
        out = CycloRational.const(self.m, 1)
        for _ in range(k):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return self.num.is_zero()

    # -- zeta operations ---------------------------------------------------

    def invert_vars(self) -> "CycloRational":
        """``W(X^-1, Y_1^-1, ...)`` rewritten over the same cyclotomic factors.

        Uses ``1/(1 - M^-1) = -M/(1 - M)`` for each factor monomial ``M``.
        """
        num = self.num.map_exponents(lambda e: [-x for x in e])
        sign = -1 if len(self.factors) % 2 else 1
        total = [0] * self.nvars
        for fac in self.factors:
            for i, x in enumerate(fac.exps):
                total[i] += x
        return CycloRational(num.shift(total) * sign, self.factors)

    def equal(self, other: "CycloRational") -> bool:
        """Decide equality as rational functions by cross-multiplication."""
        other = self._coerce(other)
        c1, c2 = self.factor_counts(), other.factor_counts()
        common = c1 & c2
        r1 = product((f.poly() ** k for f, k in (c1 - common).items()), self.nvars)
        r2 = product((f.poly() ** k for f, k in (c2 - common).items()), self.nvars)
        return (self.num * r2 - other.num * r1).is_zero()

    def __eq__(self, other):
        if not isinstance(other, (CycloRational, LaurentPoly, int, Fraction)):
            return NotImplemented
        return self.equal(other)

    def __hash__(self):
        return hash(self.to_rational_function())

    def substitute_pf(self, p: int, f: int, sign: int = 1) -> RatY:
        """Set ``X = p^f`` and ``Y_j -> Y_j^sign``; returns a rational function in Y."""
        if f == 0:
            raise ValueError("f must be nonzero")
        x = Fraction(p) ** f
        num = self.num.specialize_first(x, sign)
        den = LaurentPoly.one(self.m)
        for fac in self.factors:
            coeff = x ** fac.a
            den = den * (
                LaurentPoly.one(self.m) - LaurentPoly.monomial([sign * b for b in fac.b], coeff)
            )
        return RatY(num, den)

    def evaluate(self, x, ys: Sequence):
        point = [x] + list(ys)
        den = 1
        for fac in self.factors:
            den = den * (1 - LaurentPoly.monomial(fac.exps).evaluate(point))
        if den == 0:
            raise ZeroDivisionError("denominator vanishes at point")
        return self.num.evaluate(point) / den

    # -- printing ----------------------------------------------------------

    def format(self) -> str:
        names = var_names(self.m)
        num = self.num.format(names)
        if not self.factors:
            return num
        if len(self.num.terms) > 1:
            num = f"({num})"
        counts = sorted(self.factor_counts().items(), key=lambda kv: (sum(kv[0].exps), kv[0]))
        parts = []
        for fac, k in counts:
            body = f"({fac.format(names)})"
            parts.append(body if k == 1 else f"{body}^{k}")
        if len(parts) == 1 and counts[0][1] == 1:
            return f"{num}/{parts[0]}"
        return f"{num}/({' * '.join(parts)})"

    __str__ = format

    def __repr__(self):
        return f"CycloRational({self.format()})"


# -- parsing ---------------------------------------------------------------

_YNAME = re.compile(r"Y(\d+)$")


def _as_cyclo_inverse(c: CycloRational, col) -> CycloRational:
    """``1/c`` when that is again cyclotomic, else ParseError."""
    n = c.num
    if n.is_zero():
        raise DegenerateFactor("division by an identically vanishing factor", column=col)
    if n.is_monomial():
        (e, coeff), = n.terms.items()
        inv = LaurentPoly.monomial([-x for x in e], 1 / coeff)
        return CycloRational(c.denominator() * inv)
    if len(n.terms) == 2:
        (e1, c1), (e2, c2) = sorted(n.terms.items(), key=lambda kv: (any(kv[0]), sum(kv[0]), kv[0]))
        if c1 + c2 == 0:
            # n = c1 X^e1 (1 - X^(e2-e1))
            fac = CycloFactor(e2[0] - e1[0], tuple(y - x for x, y in zip(e1[1:], e2[1:])))
            inv = LaurentPoly.monomial([-x for x in e1], 1 / c1)
            return CycloRational(c.denominator() * inv, [fac])
    raise ParseError("denominator is not a product of cyclotomic factors 1 - X^a*Y^b", column=col)


def _interpret(node, m: int) -> CycloRational:
    kind = node.kind
    if kind == "num":
        return CycloRational.const(m, node[2])
    if kind == "var":
        name = node[2]
        if name == "X":
            return CycloRational.X(m)
        if name == "Y" and m == 1:
            return CycloRational.Y(m, 1)
        mt = _YNAME.match(name)
        if mt and 1 <= int(mt.group(1)) <= m:
            return CycloRational.Y(m, int(mt.group(1)))
        raise ParseError(f"unknown variable {name!r} (expected X, Y1..Y{m})", column=node.col)
    if kind == "neg":
        return -_interpret(node[2], m)
    if kind == "pow":
        base = _interpret(node[2], m)
        k = node[3]
        if k >= 0:
            return base ** k
        return _invert(node[2], m) ** (-k)
    a = _interpret(node[2], m)
    if kind == "div":
        return a * _invert(node[3], m)
    b = _interpret(node[3], m)
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    return a * b


def _invert(node, m: int) -> CycloRational:
    """Interpret ``1/node``, inverting products factor by factor."""
    kind = node.kind
    cval = const_value(node)
    if cval is not None:
        if cval == 0:
            raise DegenerateFactor("division by an identically vanishing factor", column=node.col)
        return CycloRational.const(m, 1 / cval)
    if kind == "mul":
        return _invert(node[2], m) * _invert(node[3], m)
    if kind == "div":
        return _invert(node[2], m) * _interpret(node[3], m)
    if kind == "neg":
        return -_invert(node[2], m)
    if kind == "pow":
        if node[3] >= 0:
            return _invert(node[2], m) ** node[3]
        return _interpret(node[2], m) ** (-node[3])
    return _as_cyclo_inverse(_interpret(node, m), node.col)


def _infer_m(text: str) -> int:
    idx = [int(k) for k in re.findall(r"\bY(\d+)\b", text)]
    return max(idx, default=1)


def parse_cyclo(expr: str, m: int | None = None) -> CycloRational:
    """Parse a W-expression such as ``"(1 - Y1)/(1 - X*Y1)"``.

    Numerators are Laurent polynomials in X, Y1..Ym (``Y`` is accepted for
    ``Y1`` when ``m == 1``); everything divided by must be a product of
    cyclotomic factors up to a monomial.  ``m`` defaults to the largest Y
    index that appears, and to 1 when none does.
    """
    if m is None:
        m = _infer_m(expr)
    return _interpret(parse_expr(expr), m)


def substitute_pf(W: CycloRational, p: int, f: int) -> RatY:
    return W.substitute_pf(p, f)


def invert_vars(W: CycloRational) -> CycloRational:
    return W.invert_vars()


def equal(W1: CycloRational, W2: CycloRational) -> bool:
    if W1.m != W2.m:
        raise ValueError("W1 and W2 have different numbers of Y variables")
    return W1.equal(W2)


def format_fraction(c: Fraction) -> str:
    return format_coeff(Fraction(c))
