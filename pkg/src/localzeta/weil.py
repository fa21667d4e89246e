"""Linear recurrences behind point-count sequences.

By rationality of the Weil zeta function, ``N_f = |V(F_{q^f})|`` is a finite
sum ``sum_i m_i alpha_i^f``; equivalently the sequence satisfies a linear
recurrence whose characteristic roots are the ``alpha_i``.  Fitting that
recurrence from finitely many counts lets us run it backwards to define
``N_f`` for negative ``f``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import BudgetExceeded, NonUniformCount, NotPolynomialCount, Unstable, ZeroEigenvalue
from .ffield import is_prime
from .geom import DEFAULT_BUDGET, ConstructibleSet, count_points

DEFAULT_DEPTH = 8
MAX_DEPTH = 16
DEFAULT_SLACK = 4
# per-count evaluation cap when confirming a reference spectral form at another prime
CROSSCHECK_BUDGET = 10**6


@dataclass(frozen=True)
class WeilModel:
    """Counts ``N_1..N_L`` at base ``q`` and their minimal recurrence.

    ``rec = (c_1, ..., c_u)`` means ``N_f = c_1 N_{f-1} + ... + c_u N_{f-u}``.
    ``spectral`` is ``((m_1, j_1), ...)`` with ``N_f = sum m_i q^(j_i f)``
    when every characteristic root is a power of ``q``, else ``None``.
    """

    q: int
    counts: tuple[Fraction, ...]
    rec: tuple[Fraction, ...]
    spectral: tuple[tuple[int, int], ...] | None = None

    @property
    def order(self) -> int:
        return len(self.rec)


def berlekamp_massey(seq: Sequence[Fraction]) -> list[Fraction]:
    """Shortest recurrence ``(c_1..c_L)`` generating ``seq`` over Q."""
    C = [Fraction(1)]
    B = [Fraction(1)]
    L, m, b = 0, 1, Fraction(1)
    for n, s in enumerate(seq):
        d = s + sum(C[i] * seq[n - i] for i in range(1, L + 1) if i < len(C))
        if d == 0:
            m += 1
            continue
        coef = d / b
        T = list(C)
        if len(C) < len(B) + m:
            C += [Fraction(0)] * (len(B) + m - len(C))
        for i, x in enumerate(B):
            C[i + m] -= coef * x
        if 2 * L <= n:
            L, B, b, m = n + 1 - L, T, d, 1
        else:
            m += 1
    C += [Fraction(0)] * (L + 1 - len(C))
    return [-c for c in C[1:L + 1]]


def _predicts(rec: Sequence[Fraction], seq: Sequence[Fraction]) -> bool:
    u = len(rec)
    return all(
        seq[n] == sum(rec[j] * seq[n - 1 - j] for j in range(u)) for n in range(u, len(seq))
    )


def fit_recurrence(q: int, counts: Sequence, slack: int = DEFAULT_SLACK) -> WeilModel:
    """Fit the minimal recurrence on all but the last ``slack`` counts and
    require it to predict those withheld terms.

    The fitted order ``u`` must also satisfy ``2u <= len(counts) - slack``,
    which is what makes the fit from the prefix unique.
    """
    counts = tuple(Fraction(c) for c in counts)
    if slack < 0:
        raise ValueError("slack must be nonnegative")
    prefix = counts[: len(counts) - slack]
    if not prefix:
        raise Unstable(f"{len(counts)} counts leave nothing to fit with slack {slack}")
    rec = berlekamp_massey(prefix)
    u = len(rec)
    if 2 * u > len(prefix):
        raise Unstable(
            f"recurrence of order {u} needs at least {2 * u + slack} counts, got {len(counts)}"
        )
    if not _predicts(rec, counts):
        raise Unstable(f"order-{u} recurrence fitted on {len(prefix)} counts fails on the withheld terms")
    if u and rec[-1] == 0:
        raise ZeroEigenvalue("minimal recurrence has c_u = 0 (a zero characteristic root)")
    model = WeilModel(q, counts, tuple(rec))
    return WeilModel(q, counts, tuple(rec), _spectral(model))


def extend_count(model: WeilModel, f: int) -> Fraction:
    """``N_f`` for any nonzero integer ``f``, running the recurrence either way."""
    if f == 0:
        raise ValueError("f must be nonzero")
    rec, u = model.rec, model.order
    if u == 0:
        return Fraction(0)
    counts = list(model.counts)
    if f > 0:
        while len(counts) < f:
            counts.append(sum(rec[j] * counts[-1 - j] for j in range(u)))
        return counts[f - 1]
    if rec[-1] == 0:
        raise ZeroEigenvalue("cannot run the recurrence backwards through c_u = 0")
    # window[k] = N_{lowest + k}
    window = counts[:u]
    lowest = 1
    while lowest > f:
        top = window[-1]
        nxt = (top - sum(rec[j] * window[-2 - j] for j in range(u - 1))) / rec[-1]
        window = [nxt] + window[:-1]
        lowest -= 1
    return window[0]


def _solve(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    n = len(rhs)
    a = [row[:] + [r] for row, r in zip(matrix, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def _spectral(model: WeilModel) -> tuple[tuple[int, int], ...] | None:
    q, rec, u = model.q, model.rec, model.order
    if u == 0:
        return ()
    if q < 2:
        return None
    bound = 1 + max(abs(c) for c in rec)
    charpoly = [Fraction(1)] + [-c for c in rec]  # T^u - c_1 T^(u-1) - ... - c_u

    def is_root(x):
        val = Fraction(0)
        for c in charpoly:
            val = val * x + c
        return val == 0

    js = []
    j, power = 0, 1
    while power <= bound:
        if is_root(Fraction(power)):
            js.append(j)
        j += 1
        power *= q
    if len(js) != u:
        return None
    js.sort(reverse=True)
    matrix = [[Fraction(q) ** (jj * f) for jj in js] for f in range(1, u + 1)]
    ms = _solve(matrix, list(model.counts[:u]))
    if ms is None or any(m.denominator != 1 or m == 0 for m in ms):
        return None
    return tuple((int(m), jj) for m, jj in zip(ms, js))


def polynomial_count(model: WeilModel) -> tuple[tuple[int, int], ...] | None:
    """The decomposition ``N_f = sum m_i q^(j_i f)`` if one exists."""
    return model.spectral


# -- set-level helpers ------------------------------------------------------

@lru_cache(maxsize=1024)
def _fit_cached(cset, p, depth, slack, budget):
    if depth is not None:
        counts = [count_points(cset, p, f, budget=budget) for f in range(1, depth + 1)]
        return fit_recurrence(p, counts, slack)
    counts = [count_points(cset, p, f, budget=budget) for f in range(1, DEFAULT_DEPTH + 1)]
    while True:
        try:
            return fit_recurrence(p, counts, slack)
        except Unstable:
            if len(counts) >= MAX_DEPTH:
                raise
        for _ in range(2):
            counts.append(count_points(cset, p, len(counts) + 1, budget=budget))


def fit_counts(
    cset: ConstructibleSet,
    p: int,
    depth: int | None = None,
    slack: int = DEFAULT_SLACK,
    budget: int = DEFAULT_BUDGET,
) -> WeilModel:
    """Count ``cset`` over ``F_{p^f}`` for ``f = 1..depth`` and fit a model (memoised).

    With ``depth=None`` the fit starts from ``DEFAULT_DEPTH`` counts and adds
    two more at a time, up to ``MAX_DEPTH``, until the withheld terms agree.
    """
    return _fit_cached(cset, p, depth, slack, budget)


SMALLEST_DEFAULT_PRIME = 5


def default_primes(cset: ConstructibleSet, count: int = 6) -> list[int]:
    """The first ``count`` primes ``>= 5`` dividing no coefficient of the
    defining polynomials.  2 and 3 are skipped because low-degree equations
    routinely have bad reduction there (``x^2 + y^2 - 1`` is a double line
    mod 2)."""
    coeffs = [c for c in cset.coefficients() if c]
    out, k = [], SMALLEST_DEFAULT_PRIME
    while len(out) < count:
        if is_prime(k) and all(c % k for c in coeffs):
            out.append(k)
        k += 1
    return out


def uniform_spectral(
    cset: ConstructibleSet,
    primes: Sequence[int] | None = None,
    depth: int | None = None,
    slack: int = DEFAULT_SLACK,
    budget: int = DEFAULT_BUDGET,
) -> tuple[tuple[int, int], ...]:
    """Spectral data shared by every sample prime.

    The first prime admitting a spectral form becomes the reference; later
    primes are compared count by count with the reference prediction
    ``sum m_i p^(j_i f)`` and the first mismatch is reported.  Since the
    ``(m_i, alpha_i)`` are unique, any mismatch means the lists differ.
    """
    primes = list(primes) if primes else default_primes(cset)
    ref = None
    without = []
    for p in primes:
        if ref is not None:
            ref_p, spec, checks = ref
            for f in range(1, checks + 1):
                predicted = sum(m * p ** (j * f) for m, j in spec)
                try:
                    cap = budget if f == 1 else min(budget, CROSSCHECK_BUDGET)
                    actual = count_points(cset, p, f, budget=cap)
                except BudgetExceeded:
                    if f == 1:
                        raise
                    break
                if actual != predicted:
                    raise NonUniformCount(
                        f"counts of {cset.format()} at p={p}, f={f} differ from the "
                        f"spectral form {list(spec)} found at p={ref_p}",
                        witness=(ref_p, p),
                    )
            continue
        model = fit_counts(cset, p, depth, slack, budget)
        spec = model.spectral
        if spec is None:
            without.append(p)
            continue
        if without:
            raise NonUniformCount(
                f"{cset.format()} has spectral form {list(spec)} at p={p} but none at p={without[0]}",
                witness=(without[0], p),
            )
        ref = (p, spec, len(model.counts))
    if ref is None:
        raise NotPolynomialCount(
            f"counts of {cset.format()} are not polynomial in q at primes {primes}"
        )
    return ref[1]


def euler_characteristic(
    cset: ConstructibleSet,
    primes: Sequence[int] | None = None,
    depth: int | None = None,
    slack: int = DEFAULT_SLACK,
    budget: int = DEFAULT_BUDGET,
) -> int:
    """``chi(V(C))``: the user-supplied value if any, else ``sum m_i`` of the
    spectral form shared by all sample primes."""
    if cset.user_chi is not None:
        return cset.user_chi
    return sum(m for m, _ in uniform_spectral(cset, primes, depth, slack, budget))
