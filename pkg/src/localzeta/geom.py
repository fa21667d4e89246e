"""Constructible sets over Z and exact point counts over F_{p^f}.

A :class:`ConstructibleSet` is a signed list of affine systems
``{x in A^n : e_1 = ... = e_k = 0, h_1 ... h_l != 0}`` with integer
polynomials.  Its count at ``(p, f)`` is the signed sum of the system counts.

Counting is exhaustive over the finite field, with exact reductions applied
first: variables occurring nowhere contribute a factor ``q``; systems split
into independent components along shared variables; a one-variable component
is counted from gcds with ``x^q - x`` over F_p; and a component consisting of
one equation whose monomials separate into disjoint variable groups
``A(u) + B(w) = 0`` is counted by matching value histograms of ``A`` and
``-B`` instead of enumerating pairs ``(u, w)``; a single equation of degree
one in some variable not constrained by inequations is solved for it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import _parse
from .errors import ArityError, BudgetExceeded, NegativeCount, ParseError
from .ffield import VectorOps, _pgcd, _pmul, _pmod, _ppowmod, make_field
from .polys import LaurentPoly

DEFAULT_BUDGET = 10**8

_CHUNK = 1 << 16


@dataclass(frozen=True)
class AffineSystem:
    n: int
    equations: tuple[LaurentPoly, ...] = ()
    inequations: tuple[LaurentPoly, ...] = ()
    names: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("number of variables must be nonnegative")
        for poly in self.equations + self.inequations:
            if poly.nvars != self.n:
                raise ValueError("polynomial has the wrong number of variables")
            if not poly.is_polynomial() or any(c.denominator != 1 for c in poly.terms.values()):
                raise ValueError("polynomials must have integer coefficients and nonnegative exponents")
        if not self.names:
            object.__setattr__(self, "names", tuple(f"x{i + 1}" for i in range(self.n)))

    def format(self) -> str:
        parts = ["vars " + ",".join(self.names)]
        parts += [f"eq {e.format(self.names)}" for e in self.equations]
        parts += [f"ineq {h.format(self.names)}" for h in self.inequations]
        return " ; ".join(parts)


@dataclass(frozen=True)
class ConstructibleSet:
    pieces: tuple[tuple[int, AffineSystem], ...]
    user_chi: int | None = field(default=None, compare=False)
    label: str | None = field(default=None, compare=False)

    def __post_init__(self):
        for sign, _ in self.pieces:
            if sign not in (1, -1):
                raise ValueError("piece signs must be +1 or -1")

    def with_chi(self, chi: int | None) -> "ConstructibleSet":
        return ConstructibleSet(self.pieces, chi, self.label)

    def format(self) -> str:
        if self.label:
            return self.label
        if len(self.pieces) == 1 and self.pieces[0][0] == 1:
            return self.pieces[0][1].format()
        return " ".join(("+" if s > 0 else "-") + f"[{sys.format()}]" for s, sys in self.pieces)

    def coefficients(self) -> set[int]:
        out = set()
        for _, sys in self.pieces:
            for poly in sys.equations + sys.inequations:
                out.update(int(c) for c in poly.terms.values())
        return out


# -- builtins --------------------------------------------------------------

def _single(system: AffineSystem, label: str) -> ConstructibleSet:
    return ConstructibleSet(((1, system),), label=label)


def point() -> ConstructibleSet:
    return _single(AffineSystem(0), "point")


def affine(n: int) -> ConstructibleSet:
    return _single(AffineSystem(n), f"affine({n})")


def torus(n: int) -> ConstructibleSet:
    ineqs = tuple(LaurentPoly.var(n, i) for i in range(n))
    return _single(AffineSystem(n, (), ineqs), f"torus({n})")


def _concat(s1: AffineSystem, s2: AffineSystem) -> AffineSystem:
    n = s1.n + s2.n

    def lift(poly, offset, width):
        return LaurentPoly(
            n, {(0,) * offset + e + (0,) * (n - offset - width): c for e, c in poly.terms.items()}
        )

    eqs = tuple(lift(e, 0, s1.n) for e in s1.equations) + tuple(lift(e, s1.n, s2.n) for e in s2.equations)
    ineqs = tuple(lift(h, 0, s1.n) for h in s1.inequations) + tuple(
        lift(h, s1.n, s2.n) for h in s2.inequations
    )
    names = tuple(f"x{i + 1}" for i in range(n))
    return AffineSystem(n, eqs, ineqs, names)


def product(*sets: ConstructibleSet) -> ConstructibleSet:
    if not sets:
        raise ArityError("product needs at least one argument")
    pieces = sets[0].pieces
    for other in sets[1:]:
        pieces = tuple((s1 * s2, _concat(a, b)) for s1, a in pieces for s2, b in other.pieces)
    return ConstructibleSet(pieces, label=f"product({', '.join(s.format() for s in sets)})")


def disjoint_union(*sets: ConstructibleSet) -> ConstructibleSet:
    if not sets:
        raise ArityError("union needs at least one argument")
    pieces = tuple(pc for s in sets for pc in s.pieces)
    return ConstructibleSet(pieces, label=f"union({', '.join(s.format() for s in sets)})")


def difference(a: ConstructibleSet, b: ConstructibleSet) -> ConstructibleSet:
    pieces = a.pieces + tuple((-sign, sys) for sign, sys in b.pieces)
    return ConstructibleSet(pieces, label=f"difference({a.format()}, {b.format()})")


def builtin(name: str, *args) -> ConstructibleSet:
    """Construct a builtin set by name, checking arities."""
    nullary = {"point": point}
    unary_int = {"affine": affine, "torus": torus}
    variadic = {"product": product, "union": disjoint_union, "disjoint_union": disjoint_union}
    if name in nullary:
        if args:
            raise ArityError(f"{name} takes no arguments")
        return nullary[name]()
    if name in unary_int:
        if len(args) != 1 or not isinstance(args[0], int) or args[0] < 0:
            raise ArityError(f"{name} takes one nonnegative integer")
        return unary_int[name](args[0])
    if name in variadic:
        if not args or not all(isinstance(a, ConstructibleSet) for a in args):
            raise ArityError(f"{name} takes one or more sets")
        return variadic[name](*args)
    if name == "difference":
        if len(args) != 2 or not all(isinstance(a, ConstructibleSet) for a in args):
            raise ArityError("difference takes exactly two sets")
        return difference(*args)
    raise ParseError(f"unknown variety {name!r}")


# -- parsing ---------------------------------------------------------------

_CALL = re.compile(r"\s*([A-Za-z_]\w*)\s*(\()?")


def _parse_inline(text: str, offset: int) -> ConstructibleSet:
    segments = text.split(";")
    head = segments[0].strip()
    if not head.startswith("vars"):
        raise ParseError("inline variety must start with 'vars'", column=offset + 1)
    names = tuple(v.strip() for v in head[4:].split(",") if v.strip())
    for v in names:
        if not re.fullmatch(r"[A-Za-z_]\w*", v):
            raise ParseError(f"bad variable name {v!r}", column=offset + 1)
    if len(set(names)) != len(names):
        raise ParseError("duplicate variable name", column=offset + 1)
    n = len(names)
    eqs, ineqs = [], []
    pos = offset + len(segments[0]) + 1
    for seg in segments[1:]:
        body = seg.strip()
        col = pos + (len(seg) - len(seg.lstrip())) + 1
        pos += len(seg) + 1
        if not body:
            continue
        kind, _, expr = body.partition(" ")
        if kind not in ("eq", "ineq"):
            raise ParseError(f"expected 'eq' or 'ineq', found {kind!r}", column=col)
        poly = _parse.parse_laurent(expr, names, column_offset=col + len(kind))
        if not poly.is_polynomial() or any(c.denominator != 1 for c in poly.terms.values()):
            raise ParseError("polynomials must have integer coefficients", column=col)
        # 0 = 0 and c != 0 impose nothing; 1 = 0 and 0 != 0 are kept and empty the piece
        if kind == "eq":
            if not poly.is_zero():
                eqs.append(poly)
        elif not (poly.is_constant() and not poly.is_zero()):
            ineqs.append(poly)
    return ConstructibleSet(((1, AffineSystem(n, tuple(eqs), tuple(ineqs), names)),))


def _split_args(text: str, offset: int) -> list[tuple[str, int]]:
    args, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == "," and depth == 0:
            args.append((text[start:i], offset + start))
            start = i + 1
    args.append((text[start:], offset + start))
    return [(a, o) for a, o in args if a.strip()]


def _parse_set(text: str, offset: int) -> ConstructibleSet:
    stripped = text.strip()
    lead = len(text) - len(text.lstrip())
    offset += lead
    if stripped.startswith("[") and stripped.endswith("]"):
        return _parse_set(stripped[1:-1], offset + 1)
    if stripped.startswith("vars"):
        return _parse_inline(stripped, offset)
    m = _CALL.match(stripped)
    if not m:
        raise ParseError(f"cannot parse variety {stripped!r}", column=offset + 1)
    name = m.group(1)
    if not m.group(2):
        if stripped != name:
            raise ParseError(f"unexpected text after {name!r}", column=offset + len(name) + 1)
        return builtin(name)
    if not stripped.endswith(")"):
        raise ParseError("missing ')'", column=offset + len(stripped))
    inner_start = m.end()
    inner = stripped[inner_start:-1]
    args = []
    for arg, pos in _split_args(inner, offset + inner_start):
        a = arg.strip()
        if re.fullmatch(r"\d+", a):
            args.append(int(a))
        else:
            args.append(_parse_set(arg, pos))
    try:
        return builtin(name, *args)
    except ParseError as exc:
        raise ParseError(exc.message, column=offset + 1) from None


def parse_constructible(text: str) -> ConstructibleSet:
    """Parse the variety language, e.g. ``"vars x,y; eq x*y - 1"`` or
    ``"product(torus(1), [vars x; eq x^2 - 2])"``."""
    result = _parse_set(text, 0)
    if result.label is None and len(result.pieces) == 1:
        result = ConstructibleSet(result.pieces, label=text.strip())
    return result


# -- counting --------------------------------------------------------------

def _reduce_mod(poly: LaurentPoly, p: int) -> dict[tuple[int, ...], int]:
    out = {}
    for e, c in poly.terms.items():
        r = int(c) % p
        if r:
            out[e] = r
    return out


def _horner(ops: VectorOps, poly: dict, values: list, n: int, var: int = 0):
    """Evaluate ``poly`` (exps -> int, variables ``var..`` live) by Horner in each variable."""
    if var >= len(values) or not poly:
        c = sum(poly.values()) if poly else 0
        return ops.const(c, n)
    by_deg: dict[int, dict] = {}
    for e, c in poly.items():
        by_deg.setdefault(e[var], {})[e] = c
    top = max(by_deg)
    x = values[var]
    acc = None
    for d in range(top, -1, -1):
        coef = by_deg.get(d)
        term = _horner(ops, coef, values, n, var + 1) if coef else None
        if acc is None:
            acc = term
        else:
            acc = ops.mul(acc, x)
            if term is not None:
                acc = ops.add(acc, term)
    return acc


def _restrict(poly: dict, keep: Sequence[int]) -> dict:
    return {tuple(e[i] for i in keep): c for e, c in poly.items()}


def _enumerate_values(ops: VectorOps, polys: list[dict], k: int, chunk: int = _CHUNK):
    """Yield, chunk by chunk over F_q^k in code order, the values of ``polys``."""
    q = ops.q
    total = q**k
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        coords = []
        rest = idx
        for _ in range(k):
            rest, digit = np.divmod(rest, q)
            coords.append(ops.from_codes(digit))
        n = len(idx)
        yield n, [_horner(ops, poly, coords, n) for poly in polys]


def _brute_count(ops: VectorOps, eqs: list[dict], ineqs: list[dict], k: int) -> int:
    count = 0
    for n, vals in _enumerate_values(ops, eqs + ineqs, k):
        ok = np.ones(n, dtype=bool)
        for v in vals[: len(eqs)]:
            ok &= ops.is_zero(v)
        for v in vals[len(eqs):]:
            ok &= ~ops.is_zero(v)
        count += int(ok.sum())
    return count


def _histogram(ops: VectorOps, poly: dict, k: int) -> np.ndarray:
    q = ops.q
    hist = np.zeros(q, dtype=np.int64)
    # large chunks amortise the O(q) cost of each bincount
    chunk = min(max(_CHUNK, q // 4), 1 << 22)
    for _, (vals,) in _enumerate_values(ops, [poly], k, chunk):
        hist += np.bincount(np.asarray(ops.codes(vals), dtype=np.int64), minlength=q)
    return hist


def _groups(polys: list[dict], variables: Sequence[int]) -> list[list[int]]:
    """Connected components of ``variables`` linked by shared monomials."""
    parent = {v: v for v in variables}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for poly in polys:
        for e in poly:
            support = [i for i in variables if e[i]]
            for a in support[1:]:
                parent[find(a)] = find(support[0])
    comps: dict[int, list[int]] = {}
    for v in variables:
        comps.setdefault(find(v), []).append(v)
    return sorted(comps.values())


def _support(poly: dict) -> set[int]:
    return {i for e in poly for i, k in enumerate(e) if k}


def _component_groups(eqs, ineqs, variables):
    """Components where variables are linked if they share any polynomial."""
    parent = {v: v for v in variables}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for poly in eqs + ineqs:
        support = sorted(_support(poly))
        for a in support[1:]:
            parent[find(a)] = find(support[0])
    comps: dict[int, list[int]] = {}
    for v in variables:
        comps.setdefault(find(v), []).append(v)
    return sorted(comps.values())


class _Meter:
    def __init__(self, budget: int):
        self.budget = budget
        self.used = 0

    def charge(self, amount: int):
        self.used += amount
        if self.used > self.budget:
            raise BudgetExceeded(
                f"point evaluations {self.used} exceed the budget {self.budget}"
            )


def _dense(poly: dict) -> list[int]:
    out = [0] * (max(e[0] for e in poly) + 1)
    for (e,), c in poly.items():
        out[e] = c
    return out


def _roots_in(poly: list[int], p: int, q: int) -> int:
    """Number of distinct roots in F_q of a nonzero polynomial over F_p."""
    if len(poly) <= 1:
        return 0
    frob = _ppowmod([0, 1], q, poly, p)
    frob = frob + [0] * max(0, 2 - len(frob))
    frob[1] = (frob[1] - 1) % p
    return len(_pgcd(poly, frob, p)) - 1


def _count_univariate(p: int, q: int, eqs: list[dict], ineqs: list[dict]) -> int:
    """Points of F_q where all ``eqs`` vanish and no ``ineq`` does, via gcds with x^q - x."""
    g: list[int] = []
    for e in eqs:
        g = _pgcd(g, _dense(e), p) if g else _dense(e)
    h = [1]
    for ineq in ineqs:
        h = _pmul(h, _dense(ineq), p)
    both = _pgcd(g, h, p) if g else h
    total = _roots_in(g, p, q) if g else q
    return total - _roots_in(both, p, q)


def _count_component(ops: VectorOps, eqs, ineqs, comp, meter) -> int:
    q = ops.q
    k = len(comp)
    eqs = [_restrict(e, comp) for e in eqs]
    ineqs = [_restrict(h, comp) for h in ineqs]
    if k == 1:
        return _count_univariate(ops.p, q, eqs, ineqs)
    if len(eqs) == 1 and not ineqs and k > 1:
        (eq,) = eqs
        zero = (0,) * k
        const = eq.get(zero, 0)
        body = {e: c for e, c in eq.items() if e != zero}
        groups = _groups([body], range(k))
        if len(groups) > 1:
            left: list[int] = []
            right: list[int] = []
            for g in sorted(groups, key=len, reverse=True):
                (left if len(left) <= len(right) else right).extend(g)
            left.sort()
            right.sort()
            meter.charge(q ** len(left) + q ** len(right) + q)
            a = _restrict({e: c for e, c in body.items() if any(e[i] for i in left)}, left)
            b = _restrict({e: c for e, c in body.items() if any(e[i] for i in right)}, right)
            if const:
                b[(0,) * len(right)] = const
            ha = _histogram(ops, a, len(left))
            hb = _histogram(ops, b, len(right))
            codes = np.arange(q, dtype=np.int64)
            neg = np.asarray(ops.codes(ops.neg(ops.from_codes(codes))), dtype=np.int64)
            # A(u) + B(w) = 0 iff code(A) = code(-B)
            return int(np.dot(ha, hb[neg]))
    if len(eqs) == 1:
        linear = _linear_variable(eqs[0], ineqs, k)
        if linear is not None:
            meter.charge(q ** (k - 1))
            return _count_linear(ops, eqs[0], ineqs, k, linear)
    meter.charge(q**k)
    return _brute_count(ops, eqs, ineqs, k)


def _linear_variable(eq: dict, ineqs: list[dict], k: int) -> int | None:
    """A variable of degree exactly 1 in ``eq`` that no inequation mentions."""
    blocked = set().union(*(_support(h) for h in ineqs)) if ineqs else set()
    for v in reversed(range(k)):
        if v not in blocked and max(e[v] for e in eq) == 1:
            return v
    return None


def _count_linear(ops: VectorOps, eq: dict, ineqs: list[dict], k: int, v: int) -> int:
    """Count ``a*x_v + b = 0`` with ``a, b`` free of ``x_v``: each remaining point
    contributes one solution if ``a != 0`` and ``q`` if ``a = b = 0``."""
    rest = [i for i in range(k) if i != v]

    def part(deg):
        return {tuple(e[i] for i in rest): c for e, c in eq.items() if e[v] == deg}

    a, b = part(1), part(0)
    hs = [_restrict(h, rest) for h in ineqs]
    total = 0
    for n, vals in _enumerate_values(ops, [a, b] + hs, k - 1):
        ok = np.ones(n, dtype=bool)
        for hv in vals[2:]:
            ok &= ~ops.is_zero(hv)
        a_zero = ops.is_zero(vals[0])
        total += int((ok & ~a_zero).sum()) + ops.q * int((ok & a_zero & ops.is_zero(vals[1])).sum())
    return total


class _LazyOps:
    """Defers building the field's array tables until a kernel needs them."""

    def __init__(self, field):
        self.p = field.p
        self.q = field.q
        self._field = field

    def __getattr__(self, name):
        return getattr(self._field.vector_ops(), name)


@lru_cache(maxsize=4096)
def _count_system_cached(system: AffineSystem, p: int, f: int, budget: int) -> int:
    field = make_field(p, f)
    q = field.q
    eqs, ineqs = [], []
    for poly in system.equations:
        red = _reduce_mod(poly, p)
        if not red:
            continue
        if set(red) == {(0,) * system.n}:
            return 0
        eqs.append(red)
    for poly in system.inequations:
        red = _reduce_mod(poly, p)
        if not red:
            return 0
        if set(red) == {(0,) * system.n}:
            continue
        ineqs.append(red)
    used = sorted({i for poly in eqs + ineqs for e in poly for i in range(system.n) if e[i]})
    free = system.n - len(used)
    meter = _Meter(budget)
    total = q**free
    for comp in _component_groups(eqs, ineqs, used):
        cs = set(comp)
        ceqs = [e for e in eqs if _support(e) & cs]
        cineqs = [h for h in ineqs if _support(h) & cs]
        total *= _count_component(_LazyOps(field), ceqs, cineqs, comp, meter)
        if total == 0:
            return 0
    return total


def count_system(system: AffineSystem, p: int, f: int = 1, budget: int = DEFAULT_BUDGET) -> int:
    return _count_system_cached(system, p, f, budget)


def count_points(
    cset: ConstructibleSet,
    p: int,
    f: int = 1,
    *,
    budget: int = DEFAULT_BUDGET,
    strict: bool = False,
) -> int:
    """Signed number of F_{p^f}-points of ``cset``.

    ``budget`` caps the field evaluations spent on any single system.
    With ``strict=True`` a negative signed total raises
    :class:`~localzeta.errors.NegativeCount`.
    """
    if f < 1:
        raise ValueError("count_points needs f >= 1; use weil.extend_count for f <= 0")
    make_field(p, f)
    total = sum(sign * count_system(system, p, f, budget) for sign, system in cset.pieces)
    if strict and total < 0:
        raise NegativeCount(f"signed count {total} at p={p}, f={f} is negative")
    return total
