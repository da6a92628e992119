"""Periodic orbit packets at finite level.

A packet point over ``x0`` (norm ``q = p**d``) is a pair ``[a, r]`` with ``a`` a
unit mod ``M`` taken up to powers of ``q``, and ``r`` a positive rational up
to powers of ``q``, glued along powers of ``p``: ``[a, p*r] = [a*p, r]``.

Normal form: push the whole p-part of ``r`` into ``a``, then take the least
element of the coset ``a*<q>``. Two pairs are equivalent iff their normal forms
agree, provided ``d`` divides the order of ``p`` mod ``M`` (otherwise the level
cannot distinguish ``p**e`` from a power of ``q`` and is rejected).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ._backend import cyclic_subgroup, isotropy_scan
from .arith import euler_phi, mult_order, valuation
from .errors import CapExceededError, LevelMismatchError, NotCoprimeError, OutOfRangeError
from .scheme import ClosedPoint

__all__ = [
    "PacketPoint",
    "canonicalize",
    "act",
    "isotropy_symbolic",
    "fiber_label",
    "fiber_label_count",
    "isotropy_at_level",
    "isotropy_oracle",
    "q_powers",
    "stable_level",
    "union_index",
    "union_index_bruteforce",
    "level_ok",
]


def level_ok(point: ClosedPoint, M: int) -> bool:
    """Whether level ``M`` resolves the glue: ``gcd(M, p) = 1`` and ``d | ord_M(p)``."""
    if math.gcd(M, point.p) != 1:
        return False
    if M == 1:
        return point.d == 1
    return mult_order(point.p, M) % point.d == 0


def _split_p(r: Fraction, p: int) -> tuple[int, Fraction]:
    e = valuation(r.numerator, p) - valuation(r.denominator, p)
    return e, r / Fraction(p) ** e


@dataclass(frozen=True)
class PacketPoint:
    point: ClosedPoint
    M: int
    abar: int
    r: Fraction

    @property
    def q(self) -> int:
        return self.point.norm

    def to_json(self) -> dict:
        return {"p": self.point.p, "d": self.point.d, "M": self.M, "abar": self.abar, "r": str(self.r)}

    @classmethod
    def from_json(cls, point: ClosedPoint, obj: dict) -> "PacketPoint":
        return canonicalize(point, obj["M"], obj["abar"], Fraction(obj["r"]))


def canonicalize(point: ClosedPoint, M: int, a_raw: int, r_raw) -> PacketPoint:
    p, q = point.p, point.norm
    r_raw = Fraction(r_raw)
    if M < 1:
        raise OutOfRangeError("level must be positive")
    if math.gcd(M, p) != 1:
        raise NotCoprimeError(f"level {M} shares a factor with p = {p}")
    if math.gcd(a_raw, M) != 1:
        raise NotCoprimeError(f"a = {a_raw} is not a unit mod {M}")
    if r_raw <= 0:
        raise OutOfRangeError("r must be a positive rational")
    if not level_ok(point, M):
        raise LevelMismatchError(f"residue degree {point.d} does not divide ord_{M}({p})")
    e, r = _split_p(r_raw, p)
    a = a_raw * pow(p, e, M) % M
    abar = min(a * h % M for h in cyclic_subgroup(q % M, M))
    return PacketPoint(point, M, abar, r)


def act(pt: PacketPoint, qp) -> PacketPoint:
    """Right action of a positive rational."""
    return canonicalize(pt.point, pt.M, pt.abar, pt.r * Fraction(qp))


def isotropy_symbolic(pt: PacketPoint) -> int:
    """Generator of the stabilizer of ``pt`` in Q^{>0}: the norm of the point."""
    return pt.q


def fiber_label(pt: PacketPoint) -> tuple[int, ...]:
    """The <p>-coset of ``abar``; constant along the Q^{>0}-orbit."""
    M = pt.M
    return tuple(sorted({pt.abar * h % M for h in cyclic_subgroup(pt.point.p % M, M)}))


def fiber_label_count(p: int, M: int) -> int:
    return euler_phi(M) // (1 if M == 1 else mult_order(p, M))


def _to_fraction_set(pairs) -> frozenset[Fraction]:
    return frozenset(Fraction(n, m) for n, m in pairs)


def isotropy_at_level(point: ClosedPoint, M: int, B: int, a: int = 1) -> frozenset[Fraction]:
    """Rationals nu/nu2 (coprime, both <= B) with nu*a = nu2*q**k*a mod M for some k.

    A non-unit ``a`` only sees level ``M / gcd(a, M)``.
    """
    if math.gcd(M, point.p) != 1:
        raise NotCoprimeError(f"level {M} shares a factor with p = {point.p}")
    if B < 1:
        raise OutOfRangeError("bound must be >= 1")
    g = math.gcd(a, M)
    if g != 1:
        return isotropy_at_level(point, M // g, B)
    return _to_fraction_set(isotropy_scan(point.norm % M if M > 1 else 0, M, B))


def isotropy_oracle(q: int, M: int, B: int) -> frozenset[Fraction]:
    """Direct scan over pairs and exponents, no subgroup bookkeeping."""
    out = set()
    k_max = M + 1
    for nu in range(1, B + 1):
        for nu2 in range(1, B + 1):
            if math.gcd(nu, nu2) != 1:
                continue
            if any((nu - nu2 * pow(q, k, M)) % M == 0 for k in range(k_max)):
                out.add(Fraction(nu, nu2))
    return frozenset(out)


def q_powers(q: int, B: int) -> frozenset[Fraction]:
    """{q**j : 1/B <= q**j <= B}."""
    out = {Fraction(1)}
    x = q
    while x <= B:
        out.add(Fraction(x))
        out.add(Fraction(1, x))
        x *= q
    return frozenset(out)


def stable_level(point: ClosedPoint, B: int, M_cap: int) -> int:
    """Least level ``M >= 2`` coprime to p at which the scan detects exactly the powers of q."""
    target = q_powers(point.norm, B)
    for M in range(2, M_cap + 1):
        if math.gcd(M, point.p) != 1:
            continue
        if isotropy_at_level(point, M, B) == target:
            return M
    raise CapExceededError(f"no exact level up to {M_cap}")


def union_index(N: int, nu: int, nu2: int) -> int:
    """Least i >= 1 with N | nu**i - nu2**i."""
    if N < 1 or nu < 1 or nu2 < 1:
        raise OutOfRangeError("N, nu, nu2 must be positive")
    if math.gcd(N, nu * nu2) != 1:
        raise NotCoprimeError(f"gcd({N}, {nu * nu2}) != 1: root of unity outside mu_(nu nu2)")
    if N == 1:
        return 1
    return mult_order(nu * pow(nu2, -1, N), N)


def union_index_bruteforce(N: int, nu: int, nu2: int) -> int:
    i = 1
    while (nu**i - nu2**i) % N:
        i += 1
    return i
