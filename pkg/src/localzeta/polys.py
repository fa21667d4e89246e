"""Sparse Laurent polynomials over Q and rational functions built from them.

:class:`LaurentPoly` is the workhorse for numerators in X, Y_1..Y_m, for
polynomials in s_1..s_m, and for the Y-rational values produced by local map
evaluation.  Exponents may be negative.  Coefficients are
:class:`fractions.Fraction`.

Rational functions keep numerator and denominator unreduced during
arithmetic; equality cross-multiplies.  :meth:`RationalFunction.reduced`
cancels the gcd (through sympy) and fixes a normal form for printing.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import sympy

Exps = tuple[int, ...]


def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


def format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class LaurentPoly:
    """Immutable sparse Laurent polynomial in ``nvars`` variables."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exps, object] | None = None):
        self.nvars = nvars
        clean: dict[Exps, Fraction] = {}
        for e, c in (terms or {}).items():
            c = _frac(c)
            if c:
                e = tuple(int(x) for x in e)
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
                clean[e] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars, terms):
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        obj._hash = None
        return obj

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls._raw(nvars, {})

    @classmethod
    def const(cls, nvars: int, c) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def one(cls, nvars: int) -> "LaurentPoly":
        return cls.const(nvars, 1)

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1) -> "LaurentPoly":
        return cls(len(exps), {tuple(exps): c})

    @classmethod
    def var(cls, nvars: int, i: int) -> "LaurentPoly":
        e = [0] * nvars
        e[i] = 1
        return cls.monomial(e)

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0,) * self.nvars in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def leading_term(self) -> tuple[Exps, Fraction]:
        """Highest term in (total degree, lexicographic) order."""
        e = max(self.terms, key=lambda e: (sum(e), e))
        return e, self.terms[e]

    def min_exponents(self) -> Exps:
        if not self.terms:
            return (0,) * self.nvars
        return tuple(min(e[i] for e in self.terms) for i in range(self.nvars))

    def max_exponents(self) -> Exps:
        if not self.terms:
            return (0,) * self.nvars
        return tuple(max(e[i] for e in self.terms) for i in range(self.nvars))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def is_polynomial(self) -> bool:
        return all(x >= 0 for e in self.terms for x in e)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(self.nvars, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.const(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return LaurentPoly.zero(self.nvars)
            return LaurentPoly._raw(self.nvars, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Exps, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return LaurentPoly._raw(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial Laurent polynomial")
            (e, c), = self.terms.items()
            return LaurentPoly.monomial([x * k for x in e], Fraction(1) / c ** (-k))
        result = LaurentPoly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, exps: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial with exponent vector ``exps``."""
        return LaurentPoly._raw(
            self.nvars,
            {tuple(a + b for a, b in zip(e, exps)): c for e, c in self.terms.items()},
        )

    def map_exponents(self, fn) -> "LaurentPoly":
        out: dict[Exps, Fraction] = {}
        for e, c in self.terms.items():
            e2 = tuple(fn(e))
            v = out.get(e2, 0) + c
            if v:
                out[e2] = v
            else:
                out.pop(e2, None)
        return LaurentPoly._raw(len(next(iter(out))) if out else self.nvars, out)

    def specialize_first(self, value: Fraction, sign: int = 1) -> "LaurentPoly":
        """Substitute ``value`` for variable 0 and ``v**sign`` for the others.

        The result lives in the remaining ``nvars - 1`` variables.
        """
        value = _frac(value)
        out: dict[Exps, Fraction] = {}
        for e, c in self.terms.items():
            rest = tuple(sign * x for x in e[1:])
            v = out.get(rest, 0) + c * value ** e[0]
            if v:
                out[rest] = v
            else:
                out.pop(rest, None)
        return LaurentPoly._raw(self.nvars - 1, out)

    def evaluate(self, point: Sequence):
        total = 0
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                term = term * x**k
            total = total + term
        return total

    # -- sympy bridge ------------------------------------------------------

    def to_sympy(self, gens):
        return sympy.Poly.from_dict(
            {e: sympy.Rational(c.numerator, c.denominator) for e, c in self.terms.items()},
            *gens,
            domain=sympy.QQ,
        )

    @classmethod
    def from_sympy(cls, poly, nvars: int) -> "LaurentPoly":
        return cls(nvars, {e: Fraction(int(c.p), int(c.q)) for e, c in poly.as_dict(native=False).items()})

    # -- printing ----------------------------------------------------------

    def format(self, names: Sequence[str], descending: bool = False) -> str:
        if not self.terms:
            return "0"
        keys = sorted(self.terms, key=lambda e: (sum(e), e), reverse=descending)
        out = []
        for e in keys:
            c = self.terms[e]
            mono = "*".join(
                name if k == 1 else f"{name}^{k}" for name, k in zip(names, e) if k
            )
            mag = abs(c)
            if not mono:
                body = format_coeff(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{format_coeff(mag)}*{mono}"
            if not out:
                out.append(body if c > 0 else f"-{body}")
            else:
                out.append(f" + {body}" if c > 0 else f" - {body}")
        return "".join(out)

    def __repr__(self):
        names = [f"x{i}" for i in range(self.nvars)]
        return f"LaurentPoly({self.format(names)})"


def product(polys: Iterable[LaurentPoly], nvars: int) -> LaurentPoly:
    out = LaurentPoly.one(nvars)
    for p in polys:
        out = out * p
    return out


def _monomial_content(poly: LaurentPoly) -> Exps:
    return poly.min_exponents()


class RationalFunction:
    """Quotient ``num / den`` of Laurent polynomials, kept unreduced.

    Normal form (see :meth:`reduced`): coprime polynomial parts, the
    denominator free of monomial content (that content moves into the
    numerator as negative exponents), and the denominator's constant term,
    or failing that its lowest term, equal to 1.
    """

    descending = False

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None):
        if den is None:
            den = LaurentPoly.one(num.nvars)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.nvars != den.nvars:
            raise ValueError("numerator/denominator variable mismatch")
        self.num = num
        self.den = den

    @property
    def nvars(self) -> int:
        return self.num.nvars

    @classmethod
    def const(cls, nvars: int, c):
        return cls(LaurentPoly.const(nvars, c))

    def _wrap(self, num, den):
        return type(self)(num, den)

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, LaurentPoly):
            return type(self)(other)
        if isinstance(other, (int, Fraction)):
            return type(self).const(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return self._wrap(self.num + other.num, self.den)
        return self._wrap(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._wrap(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return self._wrap(self.num * other.den, self.den * other.num)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return (self.num * other.den - other.num * self.den).is_zero()

    def __hash__(self):
        r = self.reduced()
        return hash((r.num, r.den))

    def evaluate(self, point: Sequence):
        d = self.den.evaluate(point)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at point")
        return self.num.evaluate(point) / d

    # -- normal form -------------------------------------------------------

    def _cancel(self):
        n = self.nvars
        if self.num.is_zero():
            return LaurentPoly.zero(n), LaurentPoly.one(n)
        a = self.num.min_exponents()
        b = self.den.min_exponents()
        N = self.num.shift([-x for x in a])
        D = self.den.shift([-x for x in b])
        if n and not D.is_constant():
            gens = sympy.symbols(f"z0:{n}")
            sN, sD = N.to_sympy(gens), D.to_sympy(gens)
            g = sN.gcd(sD)
            if g.total_degree() > 0:
                N = LaurentPoly.from_sympy(sN.exquo(g), n)
                D = LaurentPoly.from_sympy(sD.exquo(g), n)
        # num/den = N x^a / (D x^b)
        return N.shift([x - y for x, y in zip(a, b)]), D

    def reduced(self):
        num, den = self._cancel()
        content = den.min_exponents()
        den = den.shift([-x for x in content])
        num = num.shift([-x for x in content])
        c = den.constant_term()
        if not c:
            c = den.terms[min(den.terms, key=lambda e: (sum(e), e))]
        return self._wrap(num * (1 / c), den * (1 / c))

    def format(self, names: Sequence[str]) -> str:
        r = self.reduced()
        num = r.num.format(names, self.descending)
        if r.den == LaurentPoly.one(self.nvars):
            return num
        den = r.den.format(names, self.descending)
        if len(r.num.terms) > 1:
            num = f"({num})"
        if len(r.den.terms) > 1 or r.den.leading_term()[1] != 1:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"{type(self).__name__}({self.format([f'x{i}' for i in range(self.nvars)])})"


class RatY(RationalFunction):
    """Rational function in Y_1..Y_m, the value type of local map evaluation."""

    def series(self, order: int) -> list[Fraction]:
        """Power-series coefficients of ``Y^0..Y^order`` (one variable only)."""
        if self.nvars != 1:
            raise ValueError("series expansion needs exactly one variable")
        r = self.reduced()
        if min(r.num.min_exponents(), default=0) < 0 or r.den.constant_term() == 0:
            raise ValueError("not a power series in Y")
        num = [r.num.terms.get((k,), Fraction(0)) for k in range(order + 1)]
        den = [r.den.terms.get((k,), Fraction(0)) for k in range(order + 1)]
        out: list[Fraction] = []
        for k in range(order + 1):
            acc = num[k] - sum(den[i] * out[k - i] for i in range(1, k + 1))
            out.append(acc / den[0])
        return out

    def __str__(self):
        return self.format([f"Y{j + 1}" for j in range(self.nvars)])


class RatS(RationalFunction):
    """Rational function in s_1..s_m with polynomial numerator and denominator.

    Printed with terms in decreasing degree; normalised to a monic
    denominator with respect to that order.
    """

    descending = True

    def reduced(self):
        num, den = self._cancel()
        shift = [min(x, 0) for x in num.min_exponents()]
        num = num.shift([-x for x in shift])
        den = den.shift([-x for x in shift])
        _, c = den.leading_term()
        return RatS(num * (1 / c), den * (1 / c))

    def __str__(self):
        return self.format([f"s{j + 1}" for j in range(self.nvars)])
