import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from localzeta.errors import BudgetExceeded, DivisionByZero, NotPrime
from localzeta.ffield import (
    DigitOps,
    PrimeOps,
    TableOps,
    enumerate_field,
    field_arithmetic,
    is_irreducible,
    is_prime,
    make_field,
    primes_below,
)

FIELDS = [(2, 1), (5, 1), (2, 2), (3, 2), (2, 3), (5, 2), (7, 3)]


def test_primality():
    assert primes_below(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert not is_prime(1) and not is_prime(0) and not is_prime(91)


def test_make_field_rejects_bad_input():
    with pytest.raises(NotPrime):
        make_field(4)
    with pytest.raises(ValueError):
        make_field(3, 0)
    with pytest.raises(BudgetExceeded):
        make_field(2, 64)


def test_moduli_are_deterministic():
    assert make_field(2, 2).modulus == (1, 1, 1)
    assert make_field(3, 2).modulus == (1, 0, 1)
    assert make_field(5, 3) is make_field(5, 3)
    for p, f in FIELDS:
        assert is_irreducible(make_field(p, f).modulus, p)


def test_f4_multiplication_table():
    F = make_field(2, 2)
    t = F.gen
    assert t * t == t + 1
    assert t * (t + 1) == F.one
    assert repr(t + 1) == "1 + t"


def test_inverse_of_zero_raises():
    F = make_field(3, 2)
    with pytest.raises(DivisionByZero):
        F.inv(F.zero)
    with pytest.raises(DivisionByZero):
        field_arithmetic(F, 0, None, "inv")


def test_enumeration_order_and_size():
    F = make_field(3, 2)
    codes = [x.code for x in enumerate_field(F)]
    assert codes == list(range(9))


@pytest.mark.parametrize("p,f", FIELDS)
def test_multiplicative_group_is_cyclic(p, f):
    F = make_field(p, f)
    orders = [F.order(x) for x in F.elements() if x]
    assert max(orders) == F.q - 1
    assert all((F.q - 1) % o == 0 for o in orders)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_field_axioms(pf, data):
    F = make_field(*pf)
    code = st.integers(0, F.q - 1)
    a, b, c = (F.from_code(data.draw(code)) for _ in range(3))
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == F.zero
    if a:
        assert a * F.inv(a) == F.one
    # Frobenius is additive and multiplicative
    fr = F.frobenius
    assert fr(a + b) == fr(a) + fr(b)
    assert fr(a * b) == fr(a) * fr(b)
    assert F.pow(a, F.q) == a


@pytest.mark.parametrize("cls,p,f", [(PrimeOps, 7, 1), (TableOps, 3, 3), (DigitOps, 3, 3), (DigitOps, 2, 4), (TableOps, 5, 2)])
def test_vector_ops_match_scalar_arithmetic(cls, p, f):
    F = make_field(p, f)
    ops = cls(F)
    rng = np.random.default_rng(0)
    xa = rng.integers(0, F.q, 200)
    xb = rng.integers(0, F.q, 200)
    va, vb = ops.from_codes(xa), ops.from_codes(xb)
    prod = np.asarray(ops.codes(ops.mul(va, vb)))
    summ = np.asarray(ops.codes(ops.add(va, vb)))
    neg = np.asarray(ops.codes(ops.neg(va)))
    scaled = np.asarray(ops.codes(ops.scale(va, 3)))
    zero = np.asarray(ops.is_zero(va))
    for i in range(200):
        a, b = F.from_code(int(xa[i])), F.from_code(int(xb[i]))
        assert prod[i] == (a * b).code
        assert summ[i] == (a + b).code
        assert neg[i] == (-a).code
        assert scaled[i] == (a * F(3)).code
        assert zero[i] == (not a)
