import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from localzeta.errors import NotInM
from localzeta.mring import AffineForm, binom_poly, check_membership, numerator_series, red
from localzeta.polys import LaurentPoly, RatS
from localzeta.ratfun import parse_cyclo

from randgen import random_member

S = ["s"]
ONE = [Fraction(1), Fraction(1)]


def fmt(poly):
    return poly.format(S, True)


def test_binomial_polynomials():
    assert fmt(binom_poly(AffineForm(0, (1,)), 2)) == "1/2*s^2 + 1/2*s"
    assert fmt(binom_poly(AffineForm(2, (1,)), 1)) == "-s + 2"
    assert fmt(binom_poly(AffineForm(5, (3,)), 0)) == "1"


def test_numerator_series():
    g = parse_cyclo("1 - X^-1").num
    assert [fmt(c) for c in numerator_series(g, 2).coeffs] == ["0", "1", "-1"]
    g = parse_cyclo("1 - Y1").num
    assert [fmt(c) for c in numerator_series(g, 1).coeffs] == ["0", "s"]
    assert [fmt(c) for c in numerator_series(LaurentPoly.one(2), 3).coeffs] == ["1", "0", "0", "0"]


def test_membership():
    assert check_membership(parse_cyclo("1/(1 - Y1)")) == (False, -1)
    assert check_membership(parse_cyclo("(1 - X^-1)^2/((1 - Y1)*(1 - X*Y1))")) == (True, 0)
    assert check_membership(parse_cyclo("(1 - Y1)/(1 - X*Y1)")) == (True, 0)
    assert check_membership(parse_cyclo("(1 - X^-1)^3/(1 - Y1)")) == (True, 1)


def test_red_examples():
    assert str(red(parse_cyclo("(1 - Y1)/(1 - X*Y1)"))) == "s1/(s1 - 1)"
    assert str(red(parse_cyclo("(1 - X^-1)/(1 - Y1)"))) == "1/s1"
    assert red(parse_cyclo("(1 - X^-1)^2/(1 - Y1)")).is_zero()
    with pytest.raises(NotInM):
        red(parse_cyclo("1/(1 - Y1)"))


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_red_of_corrected_abelian(d):
    den = " * ".join(f"(1 - X^{i}*Y1)" for i in range(d))
    W = parse_cyclo(f"(1 - X^-1)^{d}/({den})")
    expected = LaurentPoly.one(1)
    for i in range(d):
        expected = expected * (LaurentPoly.var(1, 0) - i)
    assert red(W) == RatS(LaurentPoly.one(1), expected)


def test_red_is_representation_independent():
    a = parse_cyclo("(1 - Y1)/(1 - X*Y1)")
    b = parse_cyclo("(1 - Y1)*(1 - X^2*Y1)/((1 - X*Y1)*(1 - X^2*Y1))")
    assert str(red(a)) == str(red(b))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_red_matches_integer_specialisation(seed):
    # at an integer point sigma, W(X, X^-sigma) is a Laurent series in X - 1
    # whose constant term is red W evaluated at sigma
    rng = random.Random(seed)
    W = random_member(rng)
    r = red(W)
    for sigma in range(-3, 4):
        try:
            expected = r.evaluate([Fraction(sigma)])
        except ZeroDivisionError:
            continue
        # evaluate W(X, X^-sigma) near X = 1 exactly: the constant term of
        # the series is the limit, reached by a rational function in X alone
        num = W.num.map_exponents(lambda e: [e[0] - sigma * e[1], 0])
        den = LaurentPoly.one(2)
        for fac in W.factors:
            den = den * (LaurentPoly.one(2) - LaurentPoly.monomial([fac.a - sigma * fac.b[0], 0]))
        if den.is_zero():
            continue
        assert _limit_at_one(num, den) == expected


def _limit_at_one(num: LaurentPoly, den: LaurentPoly) -> Fraction:
    """lim_{X->1} num/den by repeated differentiation (L'Hopital)."""

    def deriv(p):
        out = LaurentPoly.zero(2)
        for e, c in p.terms.items():
            if e[0]:
                out = out + LaurentPoly.monomial([e[0] - 1, 0], c * e[0])
        return out

    for _ in range(20):
        d = den.evaluate(ONE)
        if d != 0:
            return num.evaluate(ONE) / d
        if num.evaluate(ONE) != 0:
            raise ZeroDivisionError("pole at X = 1")
        num, den = deriv(num), deriv(den)
    raise AssertionError("no limit found")
