"""Local maps of Denef type: finite sums of terms ``|V(F_{p^f})| * W(p^f, Y)``."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

import mpmath

from .errors import ExcludedPrime, MixedArity, NonUniformCount, NotInM, NotPolynomialCount, NotPrime, PoleAt
from .ffield import is_prime
from .geom import DEFAULT_BUDGET, ConstructibleSet, count_points
from .mring import red
from .polys import LaurentPoly, RatS, RatY
from .ratfun import CycloRational
from .weil import DEFAULT_SLACK, default_primes, euler_characteristic, extend_count, fit_counts, uniform_spectral


@dataclass(frozen=True)
class LocalMapFormula:
    """``sum_i [V_i * W_i]`` over places outside ``excluded_primes``."""

    m: int
    terms: tuple[tuple[ConstructibleSet, CycloRational], ...]
    excluded_primes: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        for i, (_, W) in enumerate(self.terms):
            if W.m != self.m:
                raise MixedArity(f"term {i} has m={W.m}, formula has m={self.m}")

    def __add__(self, other: "LocalMapFormula") -> "LocalMapFormula":
        if other.m != self.m:
            raise MixedArity(f"cannot add formulas with m={self.m} and m={other.m}")
        return LocalMapFormula(self.m, self.terms + other.terms, self.excluded_primes | other.excluded_primes)

    def format(self) -> str:
        body = " + ".join(f"[{V.format()} * ({W.format()})]" for V, W in self.terms)
        if self.excluded_primes:
            body += f"  (excluding {sorted(self.excluded_primes)})"
        return body


def make_formula(
    terms: Iterable[tuple[ConstructibleSet, CycloRational]],
    m: int | None = None,
    excluded_primes: Iterable[int] = (),
) -> LocalMapFormula:
    terms = tuple((V, W) for V, W in terms)
    arities = sorted({W.m for _, W in terms})
    if len(arities) > 1:
        raise MixedArity(f"terms mix numbers of Y variables: {arities}")
    if m is None:
        if not arities:
            raise ValueError("m is required for an empty formula")
        m = arities[0]
    return LocalMapFormula(m, terms, frozenset(excluded_primes))


def _check_place(F: LocalMapFormula, p: int):
    if not is_prime(p):
        raise NotPrime(p)
    if p in F.excluded_primes:
        raise ExcludedPrime(f"p={p} is excluded from this formula")


def evaluate(F: LocalMapFormula, p: int, f: int, budget: int = DEFAULT_BUDGET) -> RatY:
    """``sum_i |V_i(F_{p^f})| * W_i(p^f, Y)`` exactly."""
    _check_place(F, p)
    if f < 1:
        raise ValueError("f must be a positive integer; use evaluate_star for f < 0")
    total = RatY(LaurentPoly.zero(F.m))
    for V, W in F.terms:
        n = count_points(V, p, f, budget=budget)
        if n:
            total = total + W.substitute_pf(p, f) * n
    return total.reduced()


def evaluate_star(
    F: LocalMapFormula,
    p: int,
    f: int,
    depth: int | None = None,
    slack: int = DEFAULT_SLACK,
    budget: int = DEFAULT_BUDGET,
) -> RatY:
    """The extension ``Z_*``: for ``f < 0`` counts come from the fitted
    recurrence and ``W_i`` is taken at ``(p^f, Y^-1)``.

    Fitted models are memoised per ``(V_i, p)`` by :func:`weil.fit_counts`.
    """
    if f == 0:
        raise ValueError("f must be nonzero")
    if f > 0:
        return evaluate(F, p, f, budget)
    _check_place(F, p)
    total = RatY(LaurentPoly.zero(F.m))
    for V, W in F.terms:
        n = extend_count(fit_counts(V, p, depth, slack, budget), f)
        if n:
            total = total + W.substitute_pf(p, f, sign=-1) * n
    return total.reduced()


def _chi(V: ConstructibleSet, primes, depth) -> int:
    return euler_characteristic(V, primes, depth)


def topological(
    F: LocalMapFormula, primes: Sequence[int] | None = None, depth: int | None = None
) -> RatS:
    """``Z_top = sum_i chi(V_i(C)) * red W_i``."""
    total = RatS(LaurentPoly.zero(F.m))
    for i, (V, W) in enumerate(F.terms):
        try:
            r = red(W)
        except NotInM as exc:
            raise NotInM(f"term {i}: {exc}", term=i) from None
        chi = _chi(V, primes, depth)
        if chi:
            total = total + r * chi
    return total.reduced()


class Uniformization(NamedTuple):
    """``W`` is the uniform representative, or ``None`` with a witness prime pair."""

    W: CycloRational | None
    witness: tuple[int, int] | None = None
    reason: str = ""

    def __bool__(self):
        return self.W is not None


def count_polynomial(spectral, m: int) -> LaurentPoly:
    """``P(X) = sum m_i X^(j_i)`` in the variables ``X, Y_1..Y_m``."""
    out = LaurentPoly.zero(m + 1)
    for mult, j in spectral:
        out = out + LaurentPoly.monomial([j] + [0] * m, mult)
    return out


def uniformize(
    F: LocalMapFormula,
    primes: Sequence[int] | None = None,
    depth: int | None = None,
    slack: int = DEFAULT_SLACK,
    budget: int = DEFAULT_BUDGET,
) -> Uniformization:
    """Replace each count by its uniform count polynomial and sum into one ``W``."""
    total = CycloRational.const(F.m, 0)
    for V, W in F.terms:
        sample = list(primes) if primes else default_primes(V)
        sample = [p for p in sample if p not in F.excluded_primes]
        try:
            spec = uniform_spectral(V, sample, depth, slack, budget)
        except NonUniformCount as exc:
            return Uniformization(None, exc.witness, str(exc))
        except NotPolynomialCount as exc:
            return Uniformization(None, None, str(exc))
        P = count_polynomial(spec, F.m)
        if not P.is_zero():
            total = total + CycloRational(P) * W
    return Uniformization(total)


class HatValue(NamedTuple):
    """A value and an absolute error bound; the bound is 0 for exact values."""

    value: Fraction | mpmath.mpf
    error: Fraction | mpmath.mpf


def numeric_hat_eval(
    F: LocalMapFormula,
    p: int,
    f: int,
    s: Sequence,
    precision: int = 50,
    budget: int = DEFAULT_BUDGET,
) -> HatValue:
    """``Z(p, f)`` at ``Y_j = p^(-f s_j)``.

    Exact when every ``s_j`` is an integer.  Otherwise the value is computed
    with ``precision`` significant digits and reported with error bound
    ``10^(3 - precision) * max(1, |value|)``.  A factor ``1 - X^a Y^b`` of
    some ``W_i`` vanishes exactly when ``a = <b, s>``; that raises PoleAt.
    """
    s = [Fraction(x) for x in s]
    if len(s) != F.m:
        raise ValueError(f"expected {F.m} values of s, got {len(s)}")
    for V, W in F.terms:
        for fac in W.factors:
            if fac.a == sum(b * x for b, x in zip(fac.b, s)):
                raise PoleAt(f"factor {fac.format(['X'] + [f'Y{j + 1}' for j in range(F.m)])} vanishes at s={[str(x) for x in s]}")
    Z = evaluate(F, p, f, budget)
    q = Fraction(p) ** f
    if all(x.denominator == 1 for x in s):
        point = [q ** (-int(x)) for x in s]
        den = Z.den.evaluate(point)
        if den == 0:
            raise PoleAt(f"denominator of Z({p},{f}) vanishes at s={[str(x) for x in s]}")
        return HatValue(Z.num.evaluate(point) / den, Fraction(0))
    with mpmath.workdps(precision + 10):
        qm = mpmath.mpf(p) ** f
        point = [qm ** (-mpmath.mpf(x.numerator) / x.denominator) for x in s]
        den = _eval_mp(Z.den, point)
        if den == 0:
            raise PoleAt(f"denominator of Z({p},{f}) vanishes at s={[str(x) for x in s]}")
        value = _eval_mp(Z.num, point) / den
        bound = mpmath.mpf(10) ** (3 - precision) * max(1, abs(value))
    return HatValue(+value, +bound)


def _eval_mp(poly: LaurentPoly, point):
    total = mpmath.mpf(0)
    for exps, c in poly.terms.items():
        term = mpmath.mpf(c.numerator) / c.denominator
        for x, e in zip(point, exps):
            term *= x**e
        total += term
    return total
