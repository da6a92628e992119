"""Rational Witt vectors over Z and Teichmuller combinations over orders.

Conventions: ``[r] = 1 - r t``; Witt addition is multiplication of rational
functions; ghost components are the coefficients of ``-t d/dt log w``, so
``gh_n([r]) = r**n``. Coefficient tuples are constant term first.

Products and Frobenius go through power sums of inverse roots and back
through Newton's identities, all in exact integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from . import gfpoly
from .characters import TruncatedCharacter, char_value, residue_of
from .errors import LevelMismatchError, ReconstructionOverflowError, ZeroElementError
from .scheme import ClosedPoint, MonogenicOrder, census

__all__ = [
    "WittRat",
    "GhostVector",
    "teich",
    "witt_add",
    "witt_neg",
    "witt_sub",
    "witt_mul",
    "frobenius_w",
    "verschiebung",
    "ghost",
    "power_sums",
    "from_power_sums",
    "cyclotomic_poly",
    "CyclotomicInt",
    "TeichCombo",
    "evaluate",
    "zero_set",
]

_GCD_PRIME = 2**61 - 1


def _trim(a) -> list[int]:
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _zmul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _qdivmod(a, b):
    from fractions import Fraction

    a = [Fraction(c) for c in a]
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and any(a):
        c = a[-1] / b[-1]
        k = len(a) - len(b)
        q[k] = c
        for i, y in enumerate(b):
            a[i + k] -= c * y
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return q, a


def _zgcd_const1(a, b) -> list[int]:
    """gcd over Q of integer polys with constant term 1, scaled to constant term 1."""
    from fractions import Fraction

    x, y = [Fraction(c) for c in a], [Fraction(c) for c in b]
    while y and any(y):
        _, r = _qdivmod(x, y)
        x, y = y, r
    g = [c / x[0] for c in x]
    assert all(c.denominator == 1 for c in g)
    return _trim([int(c) for c in g])


def _zdiv_exact(a, b) -> list[int]:
    q, r = _qdivmod(a, b)
    assert not any(r) and all(c.denominator == 1 for c in q)
    return _trim([int(c) for c in q])


def _coprime_fast(a, b) -> bool:
    """Sufficient test: gcd mod a large prime not dividing lc(a) is 1."""
    if len(a) == 1 or len(b) == 1:
        return True
    p = _GCD_PRIME
    if a[-1] % p == 0:
        return False
    return len(gfpoly.gcd([c % p for c in a], [c % p for c in b], p)) == 1


def _reduce(num, den):
    num, den = _trim(num), _trim(den)
    if not _coprime_fast(num, den):
        g = _zgcd_const1(num, den)
        if len(g) > 1:
            num, den = _zdiv_exact(num, g), _zdiv_exact(den, g)
    return tuple(num), tuple(den)


@dataclass(frozen=True)
class WittRat:
    num: tuple[int, ...] = (1,)
    den: tuple[int, ...] = (1,)

    def __post_init__(self):
        num, den = _trim(self.num), _trim(self.den)
        if num[0] != 1 or den[0] != 1:
            raise ValueError("numerator and denominator need constant term 1")
        object.__setattr__(self, "num", tuple(int(c) for c in num))
        object.__setattr__(self, "den", tuple(int(c) for c in den))

    @classmethod
    def make(cls, num, den=(1,)) -> "WittRat":
        return cls(*_reduce(num, den))

    @property
    def degree(self) -> int:
        """deg num + deg den, the number of Teichmuller terms."""
        return len(self.num) + len(self.den) - 2

    def to_json(self) -> dict:
        return {"num": list(self.num), "den": list(self.den)}

    @classmethod
    def from_json(cls, obj) -> "WittRat":
        return cls.make(obj["num"], obj.get("den", [1]))

    def __add__(self, other):
        return witt_add(self, other)

    def __neg__(self):
        return witt_neg(self)

    def __sub__(self, other):
        return witt_sub(self, other)

    def __mul__(self, other):
        return witt_mul(self, other)


@dataclass(frozen=True)
class GhostVector:
    entries: tuple[int, ...]

    @property
    def precision(self) -> int:
        return len(self.entries)

    def __add__(self, other):
        return GhostVector(tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __mul__(self, other):
        return GhostVector(tuple(a * b for a, b in zip(self.entries, other.entries)))

    def __getitem__(self, n):
        """1-based: ``gh[n]`` is gh_n."""
        return self.entries[n - 1]


def teich(r: int) -> WittRat:
    return WittRat.make((1, -r))


def witt_add(w1: WittRat, w2: WittRat) -> WittRat:
    return WittRat.make(_zmul(w1.num, w2.num), _zmul(w1.den, w2.den))


def witt_neg(w: WittRat) -> WittRat:
    return WittRat(w.den, w.num)


def witt_sub(w1: WittRat, w2: WittRat) -> WittRat:
    return witt_add(w1, witt_neg(w2))


def power_sums(poly, n: int) -> list[int]:
    """p_1..p_n of the inverse roots of a constant-term-1 polynomial."""
    a = list(poly) + [0] * max(0, n + 1 - len(poly))
    ps = [0] * (n + 1)
    for k in range(1, n + 1):
        s = -k * a[k]
        for i in range(1, k):
            s -= a[i] * ps[k - i]
        ps[k] = s
    return ps[1:]


def from_power_sums(ps: list[int], degree: int) -> tuple[int, ...]:
    """Inverse of :func:`power_sums` for a polynomial of degree <= ``degree``."""
    if len(ps) < degree:
        raise ValueError("not enough power sums")
    a = [1] + [0] * degree
    for k in range(1, degree + 1):
        s = ps[k - 1]
        for i in range(1, k):
            s += a[i] * ps[k - i - 1]
        if s % k:
            raise ReconstructionOverflowError(f"Newton step {k} is not integral")
        a[k] = -s // k
    return tuple(_trim(a))


def ghost(w: WittRat, n: int) -> GhostVector:
    if n < 1:
        raise ValueError("precision must be >= 1")
    a, b = power_sums(w.num, n), power_sums(w.den, n)
    return GhostVector(tuple(x - y for x, y in zip(a, b)))


def _deg(poly) -> int:
    return len(poly) - 1


def witt_mul(w1: WittRat, w2: WittRat) -> WittRat:
    """Ring product, [a]*[b] = [ab] extended bilinearly."""
    A, B, C, D = w1.num, w1.den, w2.num, w2.den
    dn = _deg(A) * _deg(C) + _deg(B) * _deg(D)
    dd = _deg(A) * _deg(D) + _deg(B) * _deg(C)
    n = max(dn, dd, 1)
    pa, pb, pc, pd = (power_sums(x, n) for x in (A, B, C, D))
    num_ps = [pa[k] * pc[k] + pb[k] * pd[k] for k in range(n)]
    den_ps = [pa[k] * pd[k] + pb[k] * pc[k] for k in range(n)]
    return WittRat.make(from_power_sums(num_ps, dn), from_power_sums(den_ps, dd))


def frobenius_w(w: WittRat, nu: int) -> WittRat:
    """Inverse roots raised to the ``nu``-th power: gh_n(F w) = gh_{nu n}(w)."""
    if nu < 1:
        raise ValueError("nu must be positive")
    if nu == 1:
        return w

    def lift(poly):
        d = _deg(poly)
        if d == 0:
            return (1,)
        ps = power_sums(poly, nu * d)
        return from_power_sums([ps[nu * k - 1] for k in range(1, d + 1)], d)

    return WittRat.make(lift(w.num), lift(w.den))


def verschiebung(w: WittRat, nu: int) -> WittRat:
    if nu < 1:
        raise ValueError("nu must be positive")

    def sub(poly):
        out = [0] * (_deg(poly) * nu + 1)
        for i, c in enumerate(poly):
            out[i * nu] = c
        return out

    return WittRat(tuple(sub(w.num)), tuple(sub(w.den)))


# exact values in Z[zeta_M]


@lru_cache(maxsize=256)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Phi_n, constant term first."""
    if n < 1:
        raise ValueError("n must be positive")
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly = _zdiv_exact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


@dataclass(frozen=True)
class CyclotomicInt:
    """Element of Z[zeta_M] in the power basis 1, zeta, ..., zeta^(phi(M)-1)."""

    M: int
    coeffs: tuple[int, ...]

    @classmethod
    def from_exponents(cls, M: int, terms: dict[int, int]) -> "CyclotomicInt":
        phi = list(cyclotomic_poly(M))
        n = len(phi) - 1
        vec = [0] * max(M, n + 1)
        for e, c in terms.items():
            vec[e % M] += c
        # reduce modulo the monic Phi_M
        for k in range(len(vec) - 1, n - 1, -1):
            c = vec[k]
            if c:
                for i in range(n + 1):
                    vec[k - n + i] -= c * phi[i]
        return cls(M, tuple(vec[:n]))

    @classmethod
    def zero(cls, M: int) -> "CyclotomicInt":
        return cls.from_exponents(M, {})

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _check(self, other):
        if self.M != other.M:
            raise LevelMismatchError("values live at different levels")

    def __add__(self, other):
        self._check(other)
        return CyclotomicInt(self.M, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return CyclotomicInt(self.M, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        terms: dict[int, int] = {}
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        terms[i + j] = terms.get(i + j, 0) + a * b
        return CyclotomicInt.from_exponents(self.M, terms)

    def __complex__(self):
        z = complex(math.cos(2 * math.pi / self.M), math.sin(2 * math.pi / self.M))
        return sum((c * z**i for i, c in enumerate(self.coeffs)), 0j)

    def to_json(self) -> dict:
        return {"M": self.M, "power_basis": list(self.coeffs)}

    @classmethod
    def from_json(cls, obj: dict) -> "CyclotomicInt":
        return cls(obj["M"], tuple(obj["power_basis"]))


@dataclass(frozen=True)
class TeichCombo:
    """Formal sum of signed Teichmuller lifts of elements of an order."""

    order: MonogenicOrder
    terms: tuple[tuple[int, tuple[int, ...]], ...] = ()

    def _red(self, r) -> tuple[int, ...]:
        f = self.order.f
        rem = list(r)
        n = len(f) - 1
        for k in range(len(rem) - 1, n - 1, -1):
            c = rem[k]
            if c:
                for i in range(n + 1):
                    rem[k - n + i] -= c * f[i]
        return tuple(_trim(rem[:n] if len(rem) > n else rem) or [0])

    @classmethod
    def of(cls, order: MonogenicOrder, *elements, signs=None) -> "TeichCombo":
        signs = signs or [1] * len(elements)
        tc = cls(order)
        terms = tuple((s, tc._red(e if isinstance(e, (tuple, list)) else (e,))) for s, e in zip(signs, elements))
        return cls(order, terms)

    def __add__(self, other: "TeichCombo") -> "TeichCombo":
        return TeichCombo(self.order, self.terms + other.terms)

    def __neg__(self) -> "TeichCombo":
        return TeichCombo(self.order, tuple((-s, r) for s, r in self.terms))

    def __mul__(self, other: "TeichCombo") -> "TeichCombo":
        out = []
        for s1, r1 in self.terms:
            for s2, r2 in other.terms:
                out.append((s1 * s2, self._red(_zmul(r1, r2))))
        return TeichCombo(self.order, tuple(out))

    def frobenius(self, nu: int) -> "TeichCombo":
        out = []
        for s, r in self.terms:
            acc = [1]
            for _ in range(nu):
                acc = list(self._red(_zmul(acc, r)))
            out.append((s, tuple(acc)))
        return TeichCombo(self.order, tuple(out))

    def to_witt(self) -> WittRat:
        """Only over Z: the product of (1 - r t)**sign."""
        if self.order.degree != 1:
            raise ValueError("full Witt vectors are only available over Z")
        # Z[t]/(t - c): the element r(t) is the integer r(c)
        c = -self.order.f[0]
        w = WittRat()
        for s, r in self.terms:
            val = sum(coef * c**i for i, coef in enumerate(r))
            w = witt_add(w, teich(val) if s > 0 else witt_neg(teich(val)))
        return w


def evaluate(psi: TeichCombo, chi: TruncatedCharacter) -> CyclotomicInt:
    """sum sign * chi(r mod x0), with chi = 0 on the prime itself."""
    x0 = chi.point
    if psi.order != x0.order:
        raise LevelMismatchError("combination and character live on different orders")
    terms: dict[int, int] = {}
    for s, r in psi.terms:
        if x0.contains(r):
            continue
        e = char_value(chi, residue_of(x0, r), residue=True)
        terms[e] = terms.get(e, 0) + s
    return CyclotomicInt.from_exponents(chi.M, terms)


def zero_set(order: MonogenicOrder, r0, norm_bound: int) -> list[ClosedPoint]:
    """Closed points of norm <= bound containing ``r0``."""
    r0 = tuple(r0) if isinstance(r0, (tuple, list)) else (r0,)
    if not any(TeichCombo(order)._red(r0)):
        raise ZeroElementError("zero set of 0 is everything")
    return [x for x in census(order, norm_bound) if x.contains(r0)]
