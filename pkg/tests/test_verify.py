import pytest

from localzeta.errors import MixedArity
from localzeta.geom import affine, parse_constructible, point
from localzeta.localmap import make_formula
from localzeta.oracles import catalog
from localzeta.ratfun import CycloRational, parse_cyclo
from localzeta.verify import FAIL, INCONCLUSIVE, PASS, Grid, Report, equiv_check, funeq_check, uniform_check

HEIS = catalog("heisenberg_twist_irr")
W = parse_cyclo("(1 - Y1)/(1 - X*Y1)")
CIRCLE = parse_constructible("vars x,y; eq x^2 + y^2 - 1")
SMALL = Grid((2, 3, 5, 7, 11, 13), (1, 2))


def test_report_invariants():
    with pytest.raises(ValueError):
        Report(FAIL, [])
    r = Report(FAIL, [(5, 1, 0, 1), (3, 2, 0, 1), (3, 1, 0, 1)])
    assert [w[:2] for w in r.witnesses] == [(3, 1), (3, 2), (5, 1)]


def test_default_grid():
    g = Grid()
    assert g.primes[0] == 2 and g.primes[-1] == 47 and g.f_range == (1, 2, 3)


def test_equiv_line_against_point():
    r = equiv_check(make_formula([(affine(1), W)]), make_formula([(point(), CycloRational.X(1) * W)]))
    assert r.verdict == PASS and r.certified


def test_equiv_redundant_factor():
    V = parse_cyclo("(1 - Y1)*(1 - X^2*Y1)/((1 - X*Y1)*(1 - X^2*Y1))")
    r = equiv_check(HEIS, make_formula([(point(), V)]), SMALL)
    assert r.verdict == PASS and r.certified


def test_equiv_circle_fails_at_three_mod_four():
    F1 = make_formula([(CIRCLE, CycloRational.const(1, 1))], excluded_primes=[2])
    F2 = make_formula([(point(), parse_cyclo("X - 1", 1))])
    r = equiv_check(F1, F2, SMALL)
    assert r.verdict == FAIL and not r.certified
    assert r.witnesses[0][:2] == (3, 1)
    assert all(p % 4 == 3 for p, f, _, _ in r.witnesses if f == 1)


def test_equiv_arity_mismatch():
    with pytest.raises(MixedArity):
        equiv_check(HEIS, make_formula([(point(), parse_cyclo("1/(1 - Y2)"))]))


def test_uniform_check():
    r = uniform_check(HEIS, W, SMALL)
    assert r.verdict == PASS and r.certified
    A3 = catalog("abelian_sub(3)")
    r = uniform_check(A3, parse_cyclo("1/((1 - Y1)*(1 - X*Y1)*(1 - X^2*Y1))"), SMALL)
    assert r.verdict == PASS and r.certified
    F = make_formula([(CIRCLE, CycloRational.const(1, 1))], excluded_primes=[2])
    r = uniform_check(F, parse_cyclo("X - 1", 1), SMALL)
    assert r.verdict == FAIL and r.witnesses[0][0] % 4 == 3


@pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
def test_funeq_abelian(d):
    r = funeq_check(catalog(f"abelian_sub({d})"), (-1) ** d, d * (d - 1) // 2, [d], SMALL)
    assert r.verdict == PASS and r.certified


def test_funeq_heisenberg_scaling():
    # Z_*(p, -f) = p^f Z(p, f): no power of Y appears
    r = funeq_check(HEIS, 1, 1, [0])
    assert r.verdict == PASS and r.certified
    bad = funeq_check(HEIS, -1, 1, [0])
    assert bad.verdict == FAIL and bad.witnesses[0][:2] == (2, 1)


def test_funeq_with_extra_y_power_fails():
    r = funeq_check(HEIS, 1, 1, [1], SMALL)
    assert r.verdict == FAIL and r.witnesses[0][:2] == (2, 1)


def test_budget_overrun_is_inconclusive():
    F = make_formula([(affine(3), W)])
    r = equiv_check(F, F, Grid((2,), (1,), budget=1))
    assert r.verdict in (PASS, INCONCLUSIVE)
    big = make_formula([(parse_constructible("vars x,y,z; eq x*y*z + x^2*z^2 + y^3"), W)])
    r = equiv_check(big, big, Grid((47,), (3,), budget=1000))
    assert r.verdict == INCONCLUSIVE and r.notes
