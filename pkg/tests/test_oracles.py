import random
from fractions import Fraction

import pytest

from localzeta.errors import BudgetExceeded, MultipleGenerators, UnknownName
from localzeta.localmap import evaluate
from localzeta.oracles import (
    AlgebraPresentation,
    MonomialIdealSet,
    catalog,
    heisenberg_lie_ring,
    hnf_count,
    igusa_principal_exact,
    igusa_truncated,
    subzeta_coeffs,
)
from localzeta.ratfun import parse_cyclo

# closure tests run on every basis in these presentations
SCALAR_ACTION = AlgebraPresentation(2, [[[0, 0]] * 2] * 2, "submodule", (((2, 0), (0, 2)),))

# frozen output of the HNF enumeration for the Heisenberg Lie ring
HEIS_SUBALGEBRA_P2 = [1, 3, 19]
HEIS_SUBALGEBRA_P3 = [1, 4, 49, 157]
HEIS_IDEAL_P2 = [1, 3, 7, 19]


def test_abelian_counts():
    assert subzeta_coeffs(AlgebraPresentation.abelian(2), 3, 3) == [1, 4, 13, 40]
    assert subzeta_coeffs(AlgebraPresentation.abelian(1), 5, 4) == [1, 1, 1, 1, 1]


def test_enumeration_matches_divisor_sums():
    # a scalar matrix preserves every lattice, so enumeration counts all bases
    for p in (2, 3):
        assert subzeta_coeffs(SCALAR_ACTION, p, 3) == [sum(p**i for i in range(k + 1)) for k in range(4)]
        assert [hnf_count(2, p, k) for k in range(4)] == [sum(p**i for i in range(k + 1)) for k in range(4)]


def test_heisenberg_regression():
    assert subzeta_coeffs(heisenberg_lie_ring(), 2, 2) == HEIS_SUBALGEBRA_P2
    assert subzeta_coeffs(heisenberg_lie_ring(), 3, 3) == HEIS_SUBALGEBRA_P3
    assert subzeta_coeffs(heisenberg_lie_ring("ideal"), 2, 3) == HEIS_IDEAL_P2


def test_heisenberg_against_known_local_factor():
    # zeta(s) zeta(s-1) zeta(2s-2) zeta(2s-3) / zeta(3s-3) at p
    W = parse_cyclo(
        "(1 - X^3*Y1^3)/((1 - Y1)*(1 - X*Y1)*(1 - X^2*Y1^2)*(1 - X^3*Y1^2))"
    )
    for p in (2, 3):
        series = W.substitute_pf(p, 1).series(3)
        assert subzeta_coeffs(heisenberg_lie_ring(), p, 3) == series


def test_submodule_with_nontrivial_action():
    # e2 -> e1: at index 2 only span(e1, 2e2) is preserved; at index 4,
    # 2Z^2 and the spans of {(1, x), (0, 4)} with x^2 = 0 mod 4
    alg = AlgebraPresentation(2, [[[0, 0]] * 2] * 2, "submodule", (((0, 1), (0, 0)),))
    assert subzeta_coeffs(alg, 2, 2) == [1, 1, 3]


def test_budget():
    with pytest.raises(BudgetExceeded):
        subzeta_coeffs(heisenberg_lie_ring(), 5, 6, budget=1000)


@pytest.mark.parametrize("d", [1, 2, 3])
@pytest.mark.parametrize("p", [2, 3, 5])
def test_oracle_matches_catalog(d, p):
    series = evaluate(catalog(f"abelian_sub({d})"), p, 1).series(4)
    assert subzeta_coeffs(AlgebraPresentation.abelian(d), p, 4) == series


def test_igusa_examples():
    v, tail = igusa_truncated(MonomialIdealSet(1, [[(2,)]]), 3, [1], 20)
    assert tail == Fraction(1, 3**21)
    assert abs(v - Fraction(9, 13)) <= tail
    v, tail = igusa_truncated(MonomialIdealSet(2, [[(2, 1)]]), 3, [2], 12)
    assert abs(v - Fraction(729, 1573)) <= 2 * Fraction(1, 3**13)
    v, tail = igusa_truncated(MonomialIdealSet(1, [[(3,)]]), 5, [0], 6)
    assert abs(v - 1) <= tail


def test_igusa_truncation_is_stable():
    ideals = MonomialIdealSet(2, [[(1, 2), (3, 0)], [(0, 1)]])
    v1, tail = igusa_truncated(ideals, 2, [1, 2], 8)
    v2, _ = igusa_truncated(ideals, 2, [1, 2], 13)
    assert abs(v1 - v2) < tail


def test_principal_exact_forms():
    assert igusa_principal_exact([1]).equal(parse_cyclo("(1 - X^-1)/(1 - X^-1*Y1)"))
    assert igusa_principal_exact([2]).equal(parse_cyclo("(1 - X^-1)/(1 - X^-1*Y1^2)"))
    assert igusa_principal_exact([0]).equal(parse_cyclo("1", 1))
    with pytest.raises(MultipleGenerators):
        igusa_principal_exact(MonomialIdealSet(1, [[(1,), (2,)]]))


def test_principal_exact_against_truncation():
    rng = random.Random(1)
    for _ in range(5):
        n = rng.randint(1, 2)
        e = [rng.randint(0, 3) for _ in range(n)]
        q, s = rng.choice([2, 3, 5]), rng.randint(0, 3)
        exact = igusa_principal_exact(e).substitute_pf(q, 1).evaluate([Fraction(q) ** -s])
        v, tail = igusa_truncated(MonomialIdealSet(n, [[tuple(e)]]), q, [s], 9)
        assert abs(exact - v) <= tail


def test_catalog():
    F = catalog("heisenberg_twist_irr")
    for p in (2, 3, 5):
        # at Y = p^-s this is (1 - p^-s)/(1 - p^(1-s))
        assert evaluate(F, p, 1).evaluate([Fraction(1, p**2)]) == (1 - Fraction(1, p**2)) / (1 - Fraction(1, p))
    assert catalog("abelian_sub", 2).terms[0][1].equal(parse_cyclo("1/((1 - Y1)*(1 - X*Y1))"))
    assert catalog("abelian_sub_corrected(2)").terms[0][1].equal(
        parse_cyclo("(1 - X^-1)^2/((1 - Y1)*(1 - X*Y1))")
    )
    with pytest.raises(UnknownName):
        catalog("heisenberg")
    with pytest.raises(UnknownName):
        catalog("abelian_sub")
