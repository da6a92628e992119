"""Exact elementary number theory and finite-field arithmetic.

Field elements are plain ints: the residue polynomial ``c0 + c1*x + ...``
is encoded as ``c0 + c1*p + c2*p**2 + ...``. Integer order on the encoding is
the lexicographic order used to pick canonical moduli and generators.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Callable, Iterator

from . import gfpoly
from ._backend import poly_mulmod, poly_powmod, prime_sieve
from .errors import NotCoprimeError, NotGeneratorError, OutOfRangeError, ReducibleError, ZeroElementError

__all__ = [
    "INT_CAP",
    "Factorization",
    "factorize",
    "is_prime",
    "primes_up_to",
    "euler_phi",
    "mult_order",
    "prime_to_part",
    "valuation",
    "FiniteField",
    "finite_field",
    "primitive_root",
    "dlog",
    "Embedding",
]

INT_CAP = 2**63

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_SMALL_PRIMES = prime_sieve(1000)


def _check_range(n: int, lo: int = 1) -> None:
    if not lo <= n <= INT_CAP:
        raise OutOfRangeError(f"{n} outside the supported range [{lo}, 2^63]")


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for ``n < 3.3e24``."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    if n % 2 == 0:
        return 2
    rng = random.Random(n)  # deterministic per input
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _factor_into(n: int, acc: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        acc[n] = acc.get(n, 0) + 1
        return
    d = _pollard_brent(n)
    _factor_into(d, acc)
    _factor_into(n // d, acc)


@dataclass(frozen=True)
class Factorization:
    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        last = 1
        for q, e in self.factors:
            if q <= last or e < 1:
                raise ValueError("factors must have strictly increasing primes and positive exponents")
            prod *= q**e
            last = q
        if prod != self.value:
            raise ValueError("factors do not multiply to value")

    @property
    def primes(self) -> list[int]:
        return [q for q, _ in self.factors]

    def __iter__(self):
        return iter(self.factors)


@lru_cache(maxsize=4096)
def factorize(n: int) -> Factorization:
    """Prime factorization by trial division to 1000, then Pollard-Brent."""
    _check_range(n)
    acc: dict[int, int] = {}
    m = n
    for q in _SMALL_PRIMES:
        if q * q > m:
            break
        while m % q == 0:
            acc[q] = acc.get(q, 0) + 1
            m //= q
    if m > 1:
        _factor_into(m, acc)
    return Factorization(n, tuple(sorted(acc.items())))


def primes_up_to(n: int) -> list[int]:
    return prime_sieve(n)


def euler_phi(n: int) -> int:
    out = n
    for q, _ in factorize(n):
        out = out // q * (q - 1)
    return out


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def prime_to_part(n: int, p: int) -> int:
    """``n`` with every factor of ``p`` removed."""
    while n % p == 0:
        n //= p
    return n


def _order_dividing(x_pow: Callable[[int], bool], n: int) -> int:
    """Smallest divisor ``k`` of ``n`` with ``x_pow(k)`` true, given it holds at ``n``."""
    k = n
    for q, e in factorize(n):
        for _ in range(e):
            if x_pow(k // q):
                k //= q
            else:
                break
    return k


def mult_order(a: int, m: int) -> int:
    """Multiplicative order of ``a`` modulo ``m``."""
    if m < 2:
        raise OutOfRangeError("modulus must be at least 2")
    _check_range(m)
    a %= m
    if math.gcd(a, m) != 1:
        raise NotCoprimeError(f"gcd({a}, {m}) != 1")
    return _order_dividing(lambda k: pow(a, k, m) == 1, euler_phi(m))


@dataclass(frozen=True)
class FiniteField:
    """The field F_p[x]/(modulus) with ``p**d`` elements.

    ``modulus`` lists coefficients lowest first, including the leading 1.
    When omitted it is the first monic irreducible of degree ``d`` in
    lexicographic order. Irreducibility is checked on construction.
    """

    p: int
    d: int = 1
    modulus: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if not is_prime(self.p):
            raise OutOfRangeError(f"{self.p} is not prime")
        if self.d < 1:
            raise OutOfRangeError("extension degree must be >= 1")
        _check_range(self.p**self.d)
        if not self.modulus:
            object.__setattr__(self, "modulus", tuple(gfpoly.first_irreducible(self.p, self.d)))
        mod = tuple(c % self.p for c in self.modulus)
        if len(mod) != self.d + 1 or mod[-1] != 1:
            raise ValueError("modulus must be monic of degree d")
        if not gfpoly.is_irreducible(list(mod), self.p):
            raise ReducibleError(f"modulus {mod} is reducible mod {self.p}")
        object.__setattr__(self, "modulus", mod)

    @property
    def size(self) -> int:
        return self.p**self.d

    @property
    def order(self) -> int:
        """Order of the multiplicative group."""
        return self.p**self.d - 1

    @cached_property
    def _mod(self) -> list[int]:
        return list(self.modulus)

    def coeffs(self, x: int) -> list[int]:
        return gfpoly.decode(x, self.p)

    def element(self, coeffs) -> int:
        """Encode a coefficient list (reduced modulo the field polynomial)."""
        c = gfpoly.poly_rem([int(v) % self.p for v in coeffs], self._mod, self.p)
        return gfpoly.encode(c, self.p)

    def elements(self) -> Iterator[int]:
        return iter(range(self.size))

    def add(self, x: int, y: int) -> int:
        if self.d == 1:
            return (x + y) % self.p
        return gfpoly.encode(gfpoly.add(self.coeffs(x), self.coeffs(y), self.p), self.p)

    def sub(self, x: int, y: int) -> int:
        if self.d == 1:
            return (x - y) % self.p
        return gfpoly.encode(gfpoly.sub(self.coeffs(x), self.coeffs(y), self.p), self.p)

    def mul(self, x: int, y: int) -> int:
        if self.d == 1:
            return x * y % self.p
        return gfpoly.encode(poly_mulmod(self.coeffs(x), self.coeffs(y), self._mod, self.p), self.p)

    def pow(self, x: int, e: int) -> int:
        if e < 0:
            x, e = self.inv(x), -e
        if self.d == 1:
            return pow(x, e, self.p)
        return gfpoly.encode(poly_powmod(self.coeffs(x), e, self._mod, self.p), self.p)

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroElementError("0 has no inverse")
        return self.pow(x, self.order - 1)

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def frobenius(self, x: int, k: int = 1) -> int:
        """``x ** (p**k)``."""
        return self.pow(x, self.p ** (k % self.d))

    def eval_poly(self, poly, x: int) -> int:
        """Evaluate a polynomial with F_p coefficients at the field element ``x``."""
        acc = 0
        for c in reversed(list(poly)):
            acc = self.add(self.mul(acc, x), c % self.p)
        return acc

    @cached_property
    def order_factorization(self) -> Factorization:
        return factorize(self.order) if self.order > 1 else Factorization(1, ())

    def element_order(self, x: int) -> int:
        if x == 0:
            raise ZeroElementError("0 has no multiplicative order")
        if self.order == 1:
            return 1
        return _order_dividing(lambda k: self.pow(x, k) == 1, self.order)

    def is_generator(self, x: int) -> bool:
        if x == 0:
            return False
        return all(self.pow(x, self.order // q) != 1 for q in self.order_factorization.primes)

    @cached_property
    def primitive_root(self) -> int:
        """Smallest element (in encoding order) of full multiplicative order."""
        for x in range(1, self.size):
            if self.is_generator(x):
                return x
        raise AssertionError("multiplicative group of a finite field is cyclic")

    def dlog(self, base: int, target: int) -> int:
        """Unique ``e`` in ``[0, order)`` with ``base**e == target``."""
        if target == 0:
            raise ZeroElementError("discrete log of 0")
        if base != self.primitive_root and not self.is_generator(base):
            raise NotGeneratorError(f"{self.format(base)} does not generate F_{self.size}^x")
        n = self.order
        if n == 1:
            return 0
        residues, moduli = [], []
        for q, e in self.order_factorization:
            residues.append(self._dlog_prime_power(base, target, q, e))
            moduli.append(q**e)
        x, m = 0, 1
        for r, mq in zip(residues, moduli):
            # CRT step
            t = (r - x) * pow(m, -1, mq) % mq
            x, m = x + m * t, m * mq
        return x % n

    def _dlog_prime_power(self, g: int, h: int, q: int, e: int) -> int:
        n = self.order
        gamma = self.pow(g, n // q)  # order q
        table = _bsgs_table(self, gamma, q)
        x = 0
        g_inv = self.inv(g)
        for k in range(e):
            hk = self.pow(self.mul(h, self.pow(g_inv, x)), n // q ** (k + 1))
            d = _bsgs_solve(self, gamma, hk, q, table)
            x += d * q**k
        return x

    def embed_into(self, other: "FiniteField") -> "Embedding":
        return Embedding.smallest_root(self, other)

    def format(self, x: int) -> str:
        c = self.coeffs(x)
        if self.d == 1:
            return str(x)
        terms = []
        for i in range(len(c) - 1, -1, -1):
            if c[i] == 0:
                continue
            coef = "" if (c[i] == 1 and i > 0) else str(c[i])
            mon = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            terms.append(f"{coef}*{mon}" if coef and mon else (coef or mon))
        return "+".join(terms) or "0"


@lru_cache(maxsize=1024)
def _bsgs_table(F: FiniteField, gamma: int, q: int):
    m = math.isqrt(q - 1) + 1
    table = {}
    cur = 1
    for j in range(m):
        table.setdefault(cur, j)
        cur = F.mul(cur, gamma)
    return m, table, F.inv(cur)  # cur == gamma**m


def _bsgs_solve(F: FiniteField, gamma: int, h: int, q: int, prepared) -> int:
    m, table, giant = prepared
    cur = h
    for i in range(m + 1):
        j = table.get(cur)
        if j is not None:
            return (i * m + j) % q
        cur = F.mul(cur, giant)
    raise NotGeneratorError("element is not in the subgroup")


@lru_cache(maxsize=256)
def finite_field(p: int, d: int = 1, modulus: tuple[int, ...] = ()) -> FiniteField:
    """Cached constructor; reuse keeps primitive roots and factorizations warm."""
    return FiniteField(p, d, tuple(modulus))


def primitive_root(F: FiniteField) -> int:
    return F.primitive_root


def dlog(base: int, target: int, F: FiniteField) -> int:
    return F.dlog(base, target)


@dataclass(frozen=True)
class Embedding:
    """Field homomorphism ``source -> target`` fixed by the image of ``x``."""

    source: FiniteField
    target: FiniteField
    image_of_x: int

    @classmethod
    def smallest_root(cls, source: FiniteField, target: FiniteField) -> "Embedding":
        return _smallest_root_embedding(source, target)

    @classmethod
    def _search(cls, source: FiniteField, target: FiniteField) -> "Embedding":
        if source.p != target.p or target.d % source.d:
            raise ValueError(f"F_{source.size} does not embed in F_{target.size}")
        if source.d == 1:
            return cls(source, target, 0)
        if source.size > 2**22:
            raise OutOfRangeError("subfield too large for root enumeration")
        # roots of an irreducible of degree > 1 are units of the subfield of order size-1
        h = target.pow(target.primitive_root, target.order // source.order)
        roots = []
        cur = 1
        for _ in range(source.order):
            if target.eval_poly(source.modulus, cur) == 0:
                roots.append(cur)
            cur = target.mul(cur, h)
        return cls(source, target, min(roots))

    def __call__(self, x: int) -> int:
        if self.source.d == 1:
            return x
        return self.target.eval_poly(self.source.coeffs(x), self.image_of_x)


@lru_cache(maxsize=256)
def _smallest_root_embedding(source: FiniteField, target: FiniteField) -> Embedding:
    return Embedding._search(source, target)
