"""Finite fields F_{p^f} as F_p[t]/(g) with deterministic moduli.

Elements carry their coefficient vector ``(c_0, ..., c_{f-1})`` over F_p.
The integer ``code = c_0 + c_1 p + ... + c_{f-1} p^{f-1}`` orders elements;
:meth:`FqField.elements` yields them in increasing code order.

Besides the scalar API, :meth:`FqField.vector_ops` gives array arithmetic
on many elements at once: residues for prime fields, discrete-log/Zech tables
for extension fields up to ``TABLE_CAP`` elements, coefficient arrays beyond.
The point counting kernels in :mod:`localzeta.geom` are written against it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .errors import BudgetExceeded, DivisionByZero, NotPrime

MAX_FIELD_SIZE = 2**63


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def primes_below(n: int) -> list[int]:
    return [k for k in range(2, n) if is_prime(k)]


# -- dense polynomials over F_p, lists low degree first ---------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _pmod(a, g, p):
    a = list(a)
    inv_lead = pow(g[-1], -1, p)
    dg = len(g) - 1
    while len(_trim(a)) - 1 >= dg:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dg
        for i, y in enumerate(g):
            a[shift + i] = (a[shift + i] - c * y) % p
    return a


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _trim(_pmod(a, b, p))
    return a


def _ppowmod(base, e, g, p):
    result = [1]
    base = _pmod(base, g, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), g, p)
        base = _pmod(_pmul(base, base, p), g, p)
        e >>= 1
    return result


def is_irreducible(g: Sequence[int], p: int) -> bool:
    """Irreducibility of ``g`` over F_p by searching factor degrees up to deg/2.

    A factor of degree ``i`` exists iff ``gcd(g, t^(p^i) - t)`` is
    nontrivial for some ``i <= deg g / 2``.
    """
    g = _trim([c % p for c in g])
    deg = len(g) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    h = [0, 1]
    for _ in range(deg // 2):
        h = _ppowmod(h, p, g, p)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        if len(_pgcd(g, diff, p)) > 1:
            return False
    return True


def _digits(code: int, p: int, f: int) -> tuple[int, ...]:
    out = []
    for _ in range(f):
        code, r = divmod(code, p)
        out.append(r)
    return tuple(out)


def _first_irreducible(p: int, f: int) -> tuple[int, ...]:
    for code in range(p**f):
        g = list(_digits(code, p, f)) + [1]
        if is_irreducible(g, p):
            return tuple(g)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


@dataclass(frozen=True, eq=False)
class FqElem:
    field: "FqField"
    coeffs: tuple[int, ...]

    @property
    def code(self) -> int:
        p = self.field.p
        return sum(c * p**i for i, c in enumerate(self.coeffs))

    def __add__(self, other):
        return self.field.add(self, self.field(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self.field.add(self, self.field.neg(self.field(other)))

    def __rsub__(self, other):
        return self.field.add(self.field(other), self.field.neg(self))

    def __neg__(self):
        return self.field.neg(self)

    def __mul__(self, other):
        return self.field.mul(self, self.field(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self.field.mul(self, self.field.inv(self.field(other)))

    def __pow__(self, e: int):
        return self.field.pow(self, e)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field(other)
        if not isinstance(other, FqElem):
            return NotImplemented
        return self.field is other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.p, self.field.f, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms) if terms else "0"


class FqField:
    """The field F_p[t]/(modulus) with ``q = p**f`` elements.

    Build instances through :func:`make_field`, which caches them so the
    same ``(p, f)`` always gives the same object.
    """

    def __init__(self, p: int, f: int, modulus: tuple[int, ...]):
        self.p = p
        self.f = f
        self.q = p**f
        self.modulus = modulus
        self._ops = None

    def __repr__(self):
        return f"FqField(p={self.p}, f={self.f}, modulus={self.modulus})"

    def __len__(self):
        return self.q

    # -- scalar API --------------------------------------------------------

    def __call__(self, value) -> FqElem:
        if isinstance(value, FqElem):
            if value.field is not self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, int):
            return FqElem(self, (value % self.p,) + (0,) * (self.f - 1))
        coeffs = tuple(int(c) % self.p for c in value)
        if len(coeffs) != self.f:
            raise ValueError(f"expected {self.f} coefficients, got {len(coeffs)}")
        return FqElem(self, coeffs)

    def from_code(self, code: int) -> FqElem:
        return FqElem(self, _digits(code, self.p, self.f))

    @property
    def zero(self) -> FqElem:
        return self(0)

    @property
    def one(self) -> FqElem:
        return self(1)

    @property
    def gen(self) -> FqElem:
        """The class of ``t`` (equal to 0 in a prime field, whose modulus is ``t``)."""
        if self.f == 1:
            return self(-self.modulus[0])
        return self((0, 1) + (0,) * (self.f - 2))

    def add(self, a: FqElem, b: FqElem) -> FqElem:
        p = self.p
        return FqElem(self, tuple((x + y) % p for x, y in zip(a.coeffs, b.coeffs)))

    def neg(self, a: FqElem) -> FqElem:
        return FqElem(self, tuple(-x % self.p for x in a.coeffs))

    def mul(self, a: FqElem, b: FqElem) -> FqElem:
        if self.f == 1:
            return FqElem(self, (a.coeffs[0] * b.coeffs[0] % self.p,))
        prod = _pmod(_pmul(list(a.coeffs), list(b.coeffs), self.p), list(self.modulus), self.p)
        prod = _trim(list(prod))
        return FqElem(self, tuple(prod) + (0,) * (self.f - len(prod)))

    def pow(self, a: FqElem, e: int) -> FqElem:
        if e < 0:
            a, e = self.inv(a), -e
        result, base = self.one, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a: FqElem) -> FqElem:
        if not a:
            raise DivisionByZero("inverse of zero")
        return self.pow(a, self.q - 2)

    def frobenius(self, a: FqElem) -> FqElem:
        return self.pow(a, self.p)

    def order(self, a: FqElem) -> int:
        """Multiplicative order of a nonzero element."""
        if not a:
            raise DivisionByZero("zero has no multiplicative order")
        n = self.q - 1
        order = n
        for r in _prime_factors(n):
            while order % r == 0 and self.pow(a, order // r) == self.one:
                order //= r
        return order

    def elements(self) -> Iterator[FqElem]:
        for code in range(self.q):
            yield self.from_code(code)

    __iter__ = elements

    # -- vectorised API ----------------------------------------------------

    def vector_ops(self) -> "VectorOps":
        """Array arithmetic for this field, choosing the fastest available representation."""
        if self._ops is None:
            if self.f == 1:
                self._ops = PrimeOps(self)
            elif self.q <= TABLE_CAP:
                self._ops = TableOps(self)
            else:
                self._ops = DigitOps(self)
        return self._ops


TABLE_CAP = 1 << 20


class VectorOps:
    """Arithmetic on numpy arrays of field elements in some internal representation.

    ``from_codes``/``codes`` convert to and from element codes; every other
    method maps representations to representations.
    """

    def __init__(self, field: FqField):
        self.field = field
        self.p = field.p
        self.q = field.q

    def const(self, c: int, n: int):
        return self.from_codes(np.full(n, c % self.p, dtype=np.int64))

    def scale(self, a, c: int):
        return self.mul(a, self.const(c, len(a)))


class PrimeOps(VectorOps):
    """Residues mod p; object arrays once products could overflow int64."""

    def __init__(self, field):
        super().__init__(field)
        self.dtype = np.int64 if field.p < 2**31 else object

    def from_codes(self, codes):
        return np.asarray(codes).astype(self.dtype) % self.p

    def codes(self, a):
        return a

    def const(self, c, n):
        return np.full(n, c % self.p, dtype=self.dtype)

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def scale(self, a, c):
        return a * (c % self.p) % self.p

    def is_zero(self, a):
        return a == 0


class TableOps(VectorOps):
    """Discrete logarithms with Zech tables: products add logs, sums look up ``log(1 + g^n)``.

    Nonzero elements are stored as their log in ``[0, q-2]`` to a fixed
    primitive element; zero is stored as ``q - 1``.
    """

    def __init__(self, field):
        super().__init__(field)
        q, p, f = field.q, field.p, field.f
        n = q - 1
        self.zero = n
        gen = _primitive_element(field)
        block = max(1, math.isqrt(n))
        powers = [field.one]
        for _ in range(block - 1):
            powers.append(field.mul(powers[-1], gen))
        first = np.array([x.coeffs for x in powers], dtype=np.float64)
        step = _mul_matrix(field, field.mul(powers[-1], gen)).astype(np.float64)
        exp = np.empty(q, dtype=np.int64)
        weights = np.array([p**i for i in range(f)], dtype=np.int64)
        cur = first
        for start in range(0, n, block):
            stop = min(start + block, n)
            exp[start:stop] = (cur[: stop - start].astype(np.int64) @ weights)
            cur = np.mod(cur @ step, p)
        exp[n] = 0
        log = np.empty(q, dtype=np.int64)
        log[exp[:n]] = np.arange(n, dtype=np.int64)
        log[0] = self.zero
        self.exp = exp
        self.log = log
        # code(1 + g^k): bump the constant digit
        c = exp[:n]
        d0 = c % p
        self.zech = log[c - d0 + (d0 + 1) % p]
        self.half = 0 if p == 2 else n // 2

    def from_codes(self, codes):
        return self.log[np.asarray(codes, dtype=np.int64)]

    def codes(self, a):
        return self.exp[a]

    def const(self, c, n):
        return np.full(n, self.log[c % self.p], dtype=np.int64)

    def mul(self, a, b):
        n = self.zero
        out = (a + b) % n
        out[(a == n) | (b == n)] = n
        return out

    def add(self, a, b):
        n = self.zero
        za, zb = a == n, b == n
        z = self.zech[(b - a) % n]
        out = np.where(z == n, n, (a + z) % n)
        out = np.where(za, b, out)
        return np.where(zb, a, out)

    def neg(self, a):
        return np.where(a == self.zero, a, (a + self.half) % self.zero)

    def is_zero(self, a):
        return a == self.zero


class DigitOps(VectorOps):
    """Coefficient arrays of shape ``(N, f)``; multiplication reduces via a fixed matrix."""

    def __init__(self, field):
        super().__init__(field)
        p, f = field.p, field.f
        red = []
        for k in range(f - 1):
            r = _pmod([0] * (f + k) + [1], list(field.modulus), p)
            red.append([r[i] if i < len(r) else 0 for i in range(f)])
        self.reduce = np.array(red, dtype=np.float64)
        self.weights = np.array([p**i for i in range(f)], dtype=np.int64)

    def from_codes(self, codes):
        codes = np.asarray(codes, dtype=np.int64)
        out = np.empty((codes.shape[0], self.field.f), dtype=np.int64)
        for i in range(self.field.f):
            codes, out[:, i] = np.divmod(codes, self.p)
        return out

    def codes(self, a):
        return a @ self.weights

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        p, f = self.p, self.field.f
        conv = np.zeros((a.shape[0], 2 * f - 1), dtype=np.int64)
        for i in range(f):
            conv[:, i:i + f] += a[:, i:i + 1] * b
        conv %= p
        high = np.rint(conv[:, f:].astype(np.float64) @ self.reduce).astype(np.int64)
        return (conv[:, :f] + high) % p

    def is_zero(self, a):
        return ~a.any(axis=1)


def _mul_matrix(field: FqField, h: FqElem) -> np.ndarray:
    """Matrix of ``x -> h*x`` acting on coefficient row vectors."""
    rows = []
    for i in range(field.f):
        basis = field(tuple(1 if j == i else 0 for j in range(field.f)))
        rows.append(field.mul(basis, h).coeffs)
    return np.array(rows, dtype=np.int64)


def _primitive_element(field: FqField) -> FqElem:
    for code in range(1, field.q):
        x = field.from_code(code)
        if field.order(x) == field.q - 1:
            return x
    raise AssertionError("no primitive element")  # pragma: no cover


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@lru_cache(maxsize=None)
def _make_field(p: int, f: int) -> FqField:
    return FqField(p, f, _first_irreducible(p, f))


def make_field(p: int, f: int = 1) -> FqField:
    """Return the field with ``p**f`` elements.

    The modulus is the first monic irreducible polynomial of degree ``f``
    when candidates are ordered by the code of their lower coefficients.
    """
    if not isinstance(p, int) or not is_prime(p):
        raise NotPrime(p)
    if not isinstance(f, int) or f < 1:
        raise ValueError(f"extension degree must be a positive integer, got {f!r}")
    if p**f > MAX_FIELD_SIZE:
        raise BudgetExceeded(f"field of size {p}^{f} exceeds the cap 2^63")
    return _make_field(p, f)


def field_arithmetic(field: FqField, a, b, op: str) -> FqElem:
    """Dispatch one field operation by name (``add``, ``mul``, ``inv``, ``pow``).

    For ``inv`` the argument ``b`` is ignored; for ``pow`` it is the integer
    exponent.
    """
    a = field(a)
    if op == "add":
        return field.add(a, field(b))
    if op == "mul":
        return field.mul(a, field(b))
    if op == "inv":
        return field.inv(a)
    if op == "pow":
        return field.pow(a, int(b))
    raise ValueError(f"unknown field operation {op!r}")


def enumerate_field(field: FqField) -> Iterator[FqElem]:
    return field.elements()
