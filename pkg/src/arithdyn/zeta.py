"""Partial Euler products, the orbit (Ruelle-style) product, and component
counts for a small catalog of base fields.

Factor tables are exact ``(norm, multiplicity)`` lists; only the product
itself is a binary float, evaluated with mpmath at the requested precision.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .arith import euler_phi, factorize
from .characters import TruncatedCharacter
from .errors import LevelMismatchError, OutOfRangeError, UnsupportedFieldError
from .flow import orbit_length_spectrum
from .scheme import MonogenicOrder, census, format_poly
from .witt import cyclotomic_poly

__all__ = [
    "PartialZeta",
    "euler_partial",
    "ruelle_partial",
    "tail_bound",
    "FieldCatalogEntry",
    "field_q",
    "quadratic_field",
    "cyclotomic_field",
    "catalog_for_order",
    "RestrictedCharacter",
    "component_count",
    "component_label",
]


@dataclass(frozen=True)
class PartialZeta:
    order: MonogenicOrder
    s: mpmath.mpf
    norm_bound: int
    value: mpmath.mpf
    factors: tuple[tuple[int, int], ...]
    tail_bound: float
    precision: int
    skipped_primes: tuple[int, ...] = ()
    kind: str = "euler"

    def log_value(self) -> mpmath.mpf:
        with mpmath.workprec(self.precision):
            return mpmath.log(self.value)

    def to_json(self) -> dict:
        digits = max(15, int(self.precision * 0.30103))
        return {
            "kind": self.kind,
            "poly": format_poly(self.order.f),
            "s": mpmath.nstr(self.s, 17),
            "norm_bound": self.norm_bound,
            "precision_bits": self.precision,
            "value": mpmath.nstr(self.value, digits),
            "tail_bound": self.tail_bound,
            "n_factors": len(self.factors),
            "skipped_primes": list(self.skipped_primes),
        }

    def factors_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["norm", "multiplicity"])
        w.writerows(self.factors)
        return buf.getvalue()


def _as_mpf(s) -> mpmath.mpf:
    if isinstance(s, Fraction):
        return mpmath.mpf(s.numerator) / s.denominator
    return mpmath.mpf(s)


def tail_bound(degree: int, s: float, X: int) -> float:
    """Relative error bound for dropping every closed point of norm > X.

    Each prime power n > X carries at most ``degree`` points, and
    -log(1 - x) <= x / (1 - 2**-s) for x <= 2**-s.
    """
    X = max(X, 1)
    c = 1.0 / (1.0 - 2.0 ** (-s))
    return math.expm1(c * degree * X ** (1.0 - s) / (s - 1.0))


def _check(s, precision):
    if precision < 50:
        raise OutOfRangeError("precision must be at least 50 bits")
    if not s > 1:
        raise OutOfRangeError("s must exceed 1")


def _factor_list(order: MonogenicOrder, norm_bound: int):
    if norm_bound < 2:
        return (), ()
    cen = census(order, norm_bound)
    counts: dict[int, int] = {}
    for x in cen:
        counts[x.norm] = counts.get(x.norm, 0) + 1
    return tuple(sorted(counts.items())), cen.skipped_primes


def euler_partial(order: MonogenicOrder, s, norm_bound: int, precision: int = 80) -> PartialZeta:
    s = _as_mpf(s)
    _check(s, precision)
    factors, skipped = _factor_list(order, norm_bound)
    with mpmath.workprec(precision):
        val = mpmath.mpf(1)
        for n, m in factors:
            val *= (1 - mpmath.mpf(n) ** (-s)) ** (-m)
    return PartialZeta(order, s, norm_bound, val, factors, tail_bound(order.degree, float(s), norm_bound), precision, skipped)


def ruelle_partial(order: MonogenicOrder, s, norm_bound: int, precision: int = 80) -> PartialZeta:
    """One factor (1 - exp(-s * l))**-1 per packet, l = log N x0, packet weight 1."""
    s = _as_mpf(s)
    _check(s, precision)
    factors: list[tuple[int, int]] = []
    skipped: tuple[int, ...] = ()
    if norm_bound >= 2:
        factors = [(e.norm, e.multiplicity) for e in orbit_length_spectrum(order, norm_bound)]
        skipped = census(order, norm_bound).skipped_primes
    with mpmath.workprec(precision):
        val = mpmath.mpf(1)
        for n, m in factors:
            ell = mpmath.log(n)
            val *= (1 - mpmath.exp(-s * ell)) ** (-m)
    return PartialZeta(
        order, s, norm_bound, val, tuple(factors), tail_bound(order.degree, float(s), norm_bound), precision, skipped, "ruelle"
    )


# component catalog


@dataclass(frozen=True)
class FieldCatalogEntry:
    kind: str  # "Q", "quadratic", "cyclotomic"
    param: int
    d_mu: int
    label_modulus: int
    _kernel: tuple[int, ...] = field(default=(), repr=False, compare=False)

    @property
    def label(self) -> str:
        if self.kind == "Q":
            return "Q"
        return f"{self.kind}({self.param})"


def field_q() -> FieldCatalogEntry:
    return FieldCatalogEntry("Q", 1, 1, 1, (0,))


def _is_fundamental(D: int) -> bool:
    if D in (0, 1):
        return False

    def squarefree(n):
        return all(e == 1 for _, e in factorize(abs(n))) if abs(n) > 1 else True

    if D % 4 == 1:
        return squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and squarefree(m)
    return False


def quadratic_field(D: int) -> FieldCatalogEntry:
    """Q(sqrt D) by fundamental discriminant ``D``."""
    if not _is_fundamental(D):
        raise UnsupportedFieldError(f"{D} is not a fundamental discriminant")
    from sympy.functions.combinatorial.numbers import kronecker_symbol

    m = abs(D)
    kernel = tuple(v for v in range(1, m) if math.gcd(v, m) == 1 and kronecker_symbol(D, v) == 1)
    return FieldCatalogEntry("quadratic", D, 2, m, kernel)


def cyclotomic_field(n: int) -> FieldCatalogEntry:
    if n < 1:
        raise OutOfRangeError("n must be positive")
    if n % 4 == 2:
        n //= 2  # Q(mu_2n) = Q(mu_n) for odd n
    if n == 1:
        return field_q()
    return FieldCatalogEntry("cyclotomic", n, euler_phi(n), n, (1,))


def catalog_for_order(order: MonogenicOrder) -> FieldCatalogEntry:
    """Catalog entry for the fraction field of Z[t]/(f), when it is one we know."""
    if order.degree == 1:
        return field_q()
    if order.degree == 2:
        disc = order.disc
        sign = -1 if disc < 0 else 1
        core = 1
        for p, e in factorize(abs(disc)):
            if e % 2:
                core *= p
        core *= sign
        return quadratic_field(core if core % 4 == 1 else 4 * core)
    n = 1
    while euler_phi(n) <= order.degree * 8 + 8:
        if euler_phi(n) == order.degree and cyclotomic_poly(n) == order.f:
            return cyclotomic_field(n)
        n += 1
    raise UnsupportedFieldError(f"no catalog entry for Q[t]/({format_poly(order.f)})")


@dataclass(frozen=True)
class RestrictedCharacter:
    """Generic-fiber character data: kernel order ``k`` and unit part ``u mod M/k``."""

    k: int
    u: int
    M: int

    def __post_init__(self):
        if self.M < 1 or self.k < 1 or self.M % self.k:
            raise OutOfRangeError("k must divide M")
        m = self.M // self.k
        if math.gcd(self.u, m) != 1:
            raise OutOfRangeError("u must be a unit mod M/k")
        object.__setattr__(self, "u", self.u % m)

    @classmethod
    def from_truncated(cls, chi: TruncatedCharacter) -> "RestrictedCharacter":
        k = math.gcd(chi.a, chi.M)
        return cls(k, chi.a // k, chi.M)

    @property
    def a(self) -> int:
        return self.k * self.u % self.M

    def frobenius(self, nu: int) -> "RestrictedCharacter":
        """Kernel order times ``nu``; no characteristic to strip in the generic fiber."""
        if self.M % (self.k * nu):
            raise LevelMismatchError(f"F_{nu} needs {self.k * nu} | {self.M}")
        return RestrictedCharacter(self.k * nu, self.u, self.M)

    def twist(self, c: int) -> "RestrictedCharacter":
        """Galois action through the cyclotomic character value ``c``."""
        return RestrictedCharacter(self.k, self.u * c, self.M)


def component_count(entry: FieldCatalogEntry) -> int:
    return entry.d_mu


def component_label(chi, entry: FieldCatalogEntry) -> int:
    """Unit part mod the label modulus, taken up to the cyclotomic image."""
    if isinstance(chi, TruncatedCharacter):
        chi = RestrictedCharacter.from_truncated(chi)
    m = entry.label_modulus
    level = chi.M // chi.k
    if level % m:
        raise LevelMismatchError(f"label modulus {m} does not divide the unit level {level}")
    if m == 1:
        return 0
    u = chi.u % m
    return min(u * h % m for h in entry._kernel)
