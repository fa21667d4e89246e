"""Brute-force ground truth: sublattice counts, truncated monomial integrals,
and a catalog of known Denef-type formulas."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import BudgetExceeded, MultipleGenerators, UnknownName
from .geom import DEFAULT_BUDGET, point
from .localmap import LocalMapFormula, make_formula
from .polys import LaurentPoly
from .ratfun import CycloFactor, CycloRational

MODES = ("subalgebra", "ideal", "submodule")


@dataclass(frozen=True)
class AlgebraPresentation:
    """A product on ``Z^d`` given by ``structure[i][j]`` = coordinates of ``e_i * e_j``.

    In ``submodule`` mode ``generators`` are ``d x d`` integer matrices acting
    on column vectors; the identity is always adjoined.
    """

    d: int
    structure: tuple
    mode: str = "subalgebra"
    generators: tuple = ()

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("rank must be positive")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        st = tuple(tuple(tuple(int(c) for c in self.structure[i][j]) for j in range(self.d)) for i in range(self.d))
        if any(len(v) != self.d for row in st for v in row):
            raise ValueError("structure constants must be d x d x d")
        object.__setattr__(self, "structure", st)
        gens = tuple(tuple(tuple(int(x) for x in row) for row in g) for g in self.generators)
        if any(len(g) != self.d or any(len(r) != self.d for r in g) for g in gens):
            raise ValueError("generators must be d x d matrices")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def abelian(cls, d: int, mode: str = "subalgebra") -> "AlgebraPresentation":
        return cls(d, [[[0] * d for _ in range(d)] for _ in range(d)], mode)

    @classmethod
    def from_products(cls, d: int, products: dict, mode: str = "subalgebra", generators=()):
        """``products[(i, j)]`` is the coordinate vector of ``e_i e_j`` (0-based)."""
        st = [[[0] * d for _ in range(d)] for _ in range(d)]
        for (i, j), vec in products.items():
            st[i][j] = list(vec)
        return cls(d, st, mode, tuple(generators))

    def is_zero_product(self) -> bool:
        return not any(c for row in self.structure for v in row for c in v)

    def multiply(self, u: Sequence[int], v: Sequence[int]) -> list[int]:
        out = [0] * self.d
        for i, a in enumerate(u):
            if a:
                for j, b in enumerate(v):
                    if b:
                        for k, c in enumerate(self.structure[i][j]):
                            if c:
                                out[k] += a * b * c
        return out


def heisenberg_lie_ring(mode: str = "subalgebra") -> AlgebraPresentation:
    """``[e1, e2] = e3 = -[e2, e1]``, other products zero."""
    return AlgebraPresentation.from_products(3, {(0, 1): (0, 0, 1), (1, 0): (0, 0, -1)}, mode)


def _in_lattice(rows: list[list[int]], v: Sequence[int]) -> bool:
    """Membership in the row span of an upper-triangular basis by back-substitution."""
    v = list(v)
    for i, row in enumerate(rows):
        if v[i] % row[i]:
            return False
        c = v[i] // row[i]
        if c:
            for j in range(i, len(v)):
                v[j] -= c * row[j]
    return True


def _closed(alg: AlgebraPresentation, rows: list[list[int]], actions) -> bool:
    d = alg.d
    if alg.mode == "subalgebra":
        return all(_in_lattice(rows, alg.multiply(a, b)) for a in rows for b in rows)
    if alg.mode == "ideal":
        units = [[int(i == j) for j in range(d)] for i in range(d)]
        return all(
            _in_lattice(rows, alg.multiply(a, e)) and _in_lattice(rows, alg.multiply(e, a))
            for a in rows
            for e in units
        )
    return all(
        _in_lattice(rows, [sum(g[i][j] * a[j] for j in range(d)) for i in range(d)])
        for g in actions
        for a in rows
    )


def _diagonal_types(d: int, k: int):
    """All ``(a_1..a_d)`` of nonnegative integers with sum ``k``."""
    if d == 1:
        yield (k,)
        return
    for first in range(k + 1):
        for rest in _diagonal_types(d - 1, k - first):
            yield (first,) + rest


def hnf_count(d: int, p: int, k: int) -> int:
    """Number of HNF bases of index ``p^k`` in ``Z^d``."""
    # column j carries j free entries, each reduced modulo p^(a_j)
    return sum(p ** sum(j * a for j, a in enumerate(t)) for t in _diagonal_types(d, k))


def _vacuous(alg: AlgebraPresentation) -> bool:
    if alg.mode == "submodule":
        return not alg.generators
    return alg.is_zero_product()


def subzeta_coeffs(
    alg: AlgebraPresentation, p: int, kmax: int, budget: int = DEFAULT_BUDGET
) -> list[int]:
    """``c_k`` = number of sublattices of index ``p^k`` closed under the mode's
    operations, for ``k = 0..kmax``.

    Bases are upper-triangular rows with diagonal ``p^(a_i)`` and entry
    ``(i, j)``, ``i < j``, reduced to ``[0, p^(a_j))``.  When the closure test is
    vacuous (zero product, or no generators) every basis counts and nothing
    is enumerated.
    """
    if _vacuous(alg):
        return [hnf_count(alg.d, p, k) for k in range(kmax + 1)]
    total = sum(hnf_count(alg.d, p, k) for k in range(kmax + 1))
    if total > budget:
        raise BudgetExceeded(f"{total} sublattice bases exceed the budget {budget}")
    d = alg.d
    identity = tuple(tuple(int(i == j) for j in range(d)) for i in range(d))
    actions = alg.generators + (identity,)
    out = []
    for k in range(kmax + 1):
        c = 0
        for t in _diagonal_types(d, k):
            diag = [p**a for a in t]
            slots = [(i, j) for j in range(d) for i in range(j)]
            for vals in itertools.product(*(range(diag[j]) for _, j in slots)):
                rows = [[0] * d for _ in range(d)]
                for i in range(d):
                    rows[i][i] = diag[i]
                for (i, j), x in zip(slots, vals):
                    rows[i][j] = x
                if _closed(alg, rows, actions):
                    c += 1
        out.append(c)
    return out


# -- monomial integrals ------------------------------------------------------

@dataclass(frozen=True)
class MonomialIdealSet:
    """Ideals ``a_1..a_m`` in ``n`` variables, each generated by monomials."""

    n: int
    ideals: tuple = field(default_factory=tuple)

    def __post_init__(self):
        ideals = tuple(tuple(tuple(int(x) for x in g) for g in gens) for gens in self.ideals)
        for gens in ideals:
            if not gens:
                raise ValueError("each ideal needs at least one generator")
            for g in gens:
                if len(g) != self.n or min(g) < 0:
                    raise ValueError(f"bad exponent vector {g} for n={self.n}")
        object.__setattr__(self, "ideals", ideals)

    @property
    def m(self) -> int:
        return len(self.ideals)


def igusa_truncated(
    ideals: MonomialIdealSet, q: int, s: Sequence[int], B: int
) -> tuple[Fraction, Fraction]:
    """``int_{Z_q^n} prod_j ||a_j(x)||^(s_j) dx`` summed over valuation vectors
    in ``{0..B}^n``, with the bound ``n q^-(B+1)`` on the omitted part."""
    if B < 1:
        raise ValueError("B must be at least 1")
    if len(s) != ideals.m or any(x < 0 for x in s):
        raise ValueError("need one nonnegative s_j per ideal")
    n = ideals.n
    qi = Fraction(1, q)
    shell = (1 - qi) ** n
    value = Fraction(0)
    for v in itertools.product(range(B + 1), repeat=n):
        expo = sum(v)
        for sj, gens in zip(s, ideals.ideals):
            if sj:
                expo += sj * min(sum(e * x for e, x in zip(g, v)) for g in gens)
        value += qi**expo
    return value * shell, n * qi ** (B + 1)


def igusa_principal_exact(exponents, corrected: bool = True) -> CycloRational:
    """``prod_i (1 - X^-1)/(1 - X^-1 Y^(e_i))`` for the ideal ``(x^e)``, with
    ``X = q`` and ``Y = q^-s``.  ``corrected=False`` drops the ``(1 - X^-1)``
    numerators."""
    if isinstance(exponents, MonomialIdealSet):
        if exponents.m != 1 or len(exponents.ideals[0]) != 1:
            raise MultipleGenerators("exact formula needs a single ideal with a single generator")
        exponents = exponents.ideals[0][0]
    exponents = [int(e) for e in exponents]
    if any(e < 0 for e in exponents):
        raise ValueError("exponents must be nonnegative")
    one_minus = LaurentPoly.one(2) - LaurentPoly.monomial((-1, 0))
    num = LaurentPoly.one(2)
    factors = []
    for e in exponents:
        if e == 0:
            if not corrected:
                num = num * one_minus
            continue
        if corrected:
            num = num * one_minus
        factors.append(CycloFactor(-1, (e,)))
    return CycloRational(num, factors)


# -- catalog -----------------------------------------------------------------

def _abelian_W(d: int, corrected: bool) -> CycloRational:
    num = LaurentPoly.one(2)
    if corrected:
        num = (LaurentPoly.one(2) - LaurentPoly.monomial((-1, 0))) ** d
    return CycloRational(num, [CycloFactor(i, (1,)) for i in range(d)])


def catalog_names() -> list[str]:
    return ["heisenberg_twist_irr", "abelian_sub(d)", "abelian_sub_corrected(d)"]


def catalog(name: str, d: int | None = None) -> LocalMapFormula:
    """Known formulas by name; ``abelian_sub(3)`` or ``catalog("abelian_sub", 3)``."""
    key = name.strip()
    mt = re.fullmatch(r"(\w+)\s*\(\s*(\d+)\s*\)", key)
    if mt:
        key, d = mt.group(1), int(mt.group(2))
    if key == "heisenberg_twist_irr" and d is None:
        W = CycloRational(LaurentPoly.one(2) - LaurentPoly.monomial((0, 1)), [CycloFactor(1, (1,))])
        return make_formula([(point(), W)], 1)
    if key in ("abelian_sub", "abelian_sub_corrected") and d is not None:
        if d < 1:
            raise UnknownName(f"{name}: rank must be positive")
        return make_formula([(point(), _abelian_W(d, key.endswith("corrected")))], 1)
    raise UnknownName(f"unknown catalog entry {name!r}; known: {', '.join(catalog_names())}")
