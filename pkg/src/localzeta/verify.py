"""Grid checks of identities between local maps.

Statements about almost all places cannot be decided from finitely many
primes, so every check compares exact values on a finite grid of
``(p, f)`` and, when both sides admit uniform representatives, also
compares those symbolically.  A report records which of the two happened.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .errors import BudgetExceeded, LocalZetaError, MixedArity
from .ffield import primes_below
from .geom import DEFAULT_BUDGET
from .localmap import LocalMapFormula, evaluate, evaluate_star, uniformize
from .polys import LaurentPoly, RatY
from .ratfun import CycloRational

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


@dataclass(frozen=True)
class Grid:
    primes: tuple[int, ...] = tuple(primes_below(50))
    f_range: tuple[int, ...] = (1, 2, 3)
    budget: int = DEFAULT_BUDGET

    def points(self, excluded: frozenset[int] = frozenset()):
        return [(p, f) for p in sorted(self.primes) if p not in excluded for f in sorted(self.f_range)]

    def usable_primes(self, excluded: frozenset[int] = frozenset()) -> list[int]:
        return [p for p in sorted(self.primes) if p not in excluded]


@dataclass
class Report:
    verdict: str
    witnesses: list[tuple[int, int, object, object]] = field(default_factory=list)
    certified: bool = False
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.verdict == FAIL and not self.witnesses:
            raise ValueError("a failing report needs a witness")
        self.witnesses.sort(key=lambda w: (w[0], w[1]))

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def summary(self) -> str:
        if self.verdict == PASS:
            return "PASS (symbolic certificate)" if self.certified else "PASS (grid)"
        if self.verdict == FAIL:
            return "FAIL"
        return "INCONCLUSIVE"

    def lines(self) -> list[str]:
        out = [self.summary()]
        for p, f, lhs, rhs in self.witnesses:
            out.append(f"witness p={p} f={f}: {lhs} != {rhs}")
        out.extend(f"note: {n}" for n in self.notes)
        return out


def _run_grid(points, lhs_fn: Callable, rhs_fn: Callable):
    """Compare at every point; budget overruns are skipped and noted."""
    witnesses, notes, compared = [], [], 0
    for p, f in points:
        try:
            lhs, rhs = lhs_fn(p, f), rhs_fn(p, f)
        except BudgetExceeded as exc:
            notes.append(f"skipped p={p} f={f}: {exc}")
            continue
        compared += 1
        if lhs != rhs:
            witnesses.append((p, f, lhs, rhs))
    return witnesses, notes, compared


def _report(witnesses, notes, compared, symbolic: bool | None, symbolic_note: str = "") -> Report:
    if symbolic_note:
        notes.append(symbolic_note)
    if witnesses:
        if symbolic:
            notes.append("symbolic identity holds but grid values differ; certificate withheld")
        return Report(FAIL, witnesses, False, notes)
    if not compared:
        return Report(INCONCLUSIVE, [], False, notes + ["no grid point could be evaluated"])
    if notes and not symbolic:
        return Report(INCONCLUSIVE, [], False, notes)
    return Report(PASS, [], bool(symbolic), notes)


def _uniform_pair(F1, F2, grid):
    """Uniform representatives of both formulas over the grid primes, or a note."""
    u1 = uniformize(F1, grid.usable_primes(F1.excluded_primes), budget=grid.budget)
    if not u1:
        return None, None, f"first formula is not uniform on the grid: {u1.reason}"
    u2 = uniformize(F2, grid.usable_primes(F2.excluded_primes), budget=grid.budget)
    if not u2:
        return None, None, f"second formula is not uniform on the grid: {u2.reason}"
    return u1.W, u2.W, ""


def _try_uniform(fn):
    try:
        return fn()
    except LocalZetaError as exc:
        return None, None, f"symbolic check skipped: {exc}"


def equiv_check(F1: LocalMapFormula, F2: LocalMapFormula, grid: Grid | None = None) -> Report:
    """Exact equality of ``F1`` and ``F2`` at every grid point."""
    grid = grid or Grid()
    if F1.m != F2.m:
        raise MixedArity(f"formulas have m={F1.m} and m={F2.m}")
    excluded = F1.excluded_primes | F2.excluded_primes
    witnesses, notes, compared = _run_grid(
        grid.points(excluded),
        lambda p, f: evaluate(F1, p, f, grid.budget),
        lambda p, f: evaluate(F2, p, f, grid.budget),
    )
    W1, W2, note = _try_uniform(lambda: _uniform_pair(F1, F2, grid))
    symbolic = W1.equal(W2) if W1 is not None else None
    if symbolic is False:
        note = "uniform representatives differ"
    return _report(witnesses, notes, compared, symbolic, note)


def uniform_check(F: LocalMapFormula, W: CycloRational, grid: Grid | None = None) -> Report:
    """Whether ``F(p, f) = W(p^f, Y)`` at every grid point."""
    grid = grid or Grid()
    if F.m != W.m:
        raise MixedArity(f"formula has m={F.m}, W has m={W.m}")
    witnesses, notes, compared = _run_grid(
        grid.points(F.excluded_primes),
        lambda p, f: evaluate(F, p, f, grid.budget),
        lambda p, f: W.substitute_pf(p, f).reduced(),
    )

    def rep():
        u = uniformize(F, grid.usable_primes(F.excluded_primes), budget=grid.budget)
        return (u.W, W, "") if u else (None, None, f"formula is not uniform on the grid: {u.reason}")

    U, _, note = _try_uniform(rep)
    symbolic = U.equal(W) if U is not None else None
    if symbolic is False:
        note = "uniform representative differs from W"
    return _report(witnesses, notes, compared, symbolic, note)


def _y_monomial(m: int, yexp: Sequence[int]) -> LaurentPoly:
    return LaurentPoly.monomial(list(yexp))


def funeq_check(
    F: LocalMapFormula,
    epsilon: int,
    xexp: int,
    yexp: Sequence[int] | int,
    grid: Grid | None = None,
    depth: int | None = None,
) -> Report:
    """``Z_*(p, -f) = epsilon * p^(xexp f) * Y^yexp * Z(p, f)`` on the grid and,
    for a uniform ``W``, ``W(X^-1, Y^-1) = epsilon * X^xexp * Y^yexp * W``."""
    grid = grid or Grid()
    if epsilon not in (1, -1):
        raise ValueError("epsilon must be +1 or -1")
    yexp = [yexp] if isinstance(yexp, int) else list(yexp)
    if len(yexp) != F.m:
        raise ValueError(f"yexp needs {F.m} entries, got {len(yexp)}")
    ymono = _y_monomial(F.m, yexp)

    def rhs(p, f):
        scale = epsilon * Fraction(p) ** (xexp * f)
        return (evaluate(F, p, f, grid.budget) * RatY(ymono * scale)).reduced()

    witnesses, notes, compared = _run_grid(
        grid.points(F.excluded_primes),
        lambda p, f: evaluate_star(F, p, -f, depth, budget=grid.budget),
        rhs,
    )

    def rep():
        u = uniformize(F, grid.usable_primes(F.excluded_primes), depth, budget=grid.budget)
        return (u.W, None, "") if u else (None, None, f"formula is not uniform on the grid: {u.reason}")

    W, _, note = _try_uniform(rep)
    symbolic = None
    if W is not None:
        target = W * CycloRational(LaurentPoly.monomial([xexp] + yexp, epsilon))
        symbolic = W.invert_vars().equal(target)
        if not symbolic:
            note = "symbolic identity W(1/X, 1/Y) = eps X^a Y^b W fails"
    return _report(witnesses, notes, compared, symbolic, note)
