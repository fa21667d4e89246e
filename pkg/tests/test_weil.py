from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from localzeta.errors import NonUniformCount, NotPolynomialCount, Unstable, ZeroEigenvalue
from localzeta.geom import affine, parse_constructible, point, torus
from localzeta.weil import (
    berlekamp_massey,
    default_primes,
    euler_characteristic,
    extend_count,
    fit_counts,
    fit_recurrence,
    polynomial_count,
    uniform_spectral,
)

CIRCLE = parse_constructible("vars x,y; eq x^2 + y^2 - 1")


def test_berlekamp_massey_small():
    assert berlekamp_massey([Fraction(x) for x in [1, 1, 2, 3, 5, 8, 13]]) == [1, 1]
    assert berlekamp_massey([Fraction(0)] * 4) == []


def test_torus_fit():
    # six counts only leave room for two withheld terms
    model = fit_recurrence(3, [2, 8, 26, 80, 242, 728], slack=2)
    assert model.rec == (4, -3)
    assert polynomial_count(model) == ((1, 1), (-1, 0))
    assert extend_count(model, -1) == Fraction(-2, 3)
    assert extend_count(model, -2) == Fraction(-8, 9)


def test_point_and_affine_fits():
    assert fit_recurrence(5, [1] * 5, slack=3).rec == (1,)
    model = fit_recurrence(2, [4, 16, 64, 256, 1024, 4096], slack=2)
    assert model.rec == (4,)
    assert extend_count(model, -1) == Fraction(1, 4)


def test_default_depth_grows_until_stable():
    model = fit_counts(torus(2), 2)
    assert model.order == 3
    assert extend_count(model, -1) == Fraction(1, 4)
    assert extend_count(fit_counts(affine(1), 5), -2) == Fraction(1, 25)


def test_unstable_and_zero_root():
    with pytest.raises(Unstable):
        fit_recurrence(2, [1, 2, 4, 8, 16, 33], slack=2)
    with pytest.raises(Unstable):
        fit_recurrence(2, [1, 2], slack=4)
    with pytest.raises(ZeroEigenvalue):
        fit_recurrence(2, [5, 0, 0, 0, 0, 0, 0, 0], slack=2)


def test_non_power_roots_have_no_spectral_form():
    # N_f = (sqrt 2)^f + (-sqrt 2)^f
    model = fit_recurrence(2, [0, 4, 0, 8, 0, 16, 0, 32, 0, 64], slack=4)
    assert model.rec == (0, 2)
    assert polynomial_count(model) is None


def test_euler_characteristics():
    assert euler_characteristic(point()) == 1
    assert euler_characteristic(affine(3)) == 1
    assert euler_characteristic(torus(1)) == 0
    assert euler_characteristic(torus(2)) == 0
    assert euler_characteristic(parse_constructible("vars x,y; eq x*y - 1")) == 0
    assert euler_characteristic(torus(1).with_chi(7)) == 7


def test_circle_is_not_uniform():
    with pytest.raises(NonUniformCount) as info:
        euler_characteristic(CIRCLE, [5, 7, 11, 13])
    p, q = info.value.witness
    assert {p % 4, q % 4} == {1, 3}
    assert default_primes(CIRCLE)[:2] == [5, 7]


def test_not_polynomial_count():
    # x^2 = 2 has 1 + legendre(2, q) points; the count alternates at p = 3, 5
    with pytest.raises(NotPolynomialCount):
        uniform_spectral(parse_constructible("vars x; eq x^2 - 2"), [3, 5])


@settings(max_examples=40, deadline=None)
@given(
    st.sampled_from([2, 3, 5]),
    st.lists(st.tuples(st.integers(-5, 5).filter(bool), st.integers(0, 4)), min_size=1, max_size=4, unique_by=lambda t: t[1]),
)
def test_spectral_lists_are_recovered(q, spec):
    counts = [sum(m * q ** (j * f) for m, j in spec) for f in range(1, 2 * len(spec) + 5)]
    model = fit_recurrence(q, counts, slack=4)
    assert sorted(model.spectral) == sorted(spec)
    for f in range(1, 4):
        assert extend_count(model, -f) == sum(m * Fraction(q) ** (-j * f) for m, j in spec)
    assert [extend_count(model, f) for f in range(1, len(counts) + 1)] == [Fraction(c) for c in counts]


def test_backward_then_forward_round_trip():
    model = fit_counts(torus(2), 3)
    u = model.order
    window = [extend_count(model, -k) for k in range(u, 0, -1)]  # N_{-u} .. N_{-1}
    # step forward from N_{-u}..N_{-1} through N_0 to N_1
    seq = list(window)
    for _ in range(2):
        seq.append(sum(c * seq[-1 - j] for j, c in enumerate(model.rec)))
    assert seq[-1] == model.counts[0]
