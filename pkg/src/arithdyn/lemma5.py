"""Constructive witness for the surjectivity of y -> y**nu * sigma(y)**(-nu2)
modulo roots of unity, where sigma is the q-power Frobenius.

Given c in F_Q^x: take the least i with sigma^i(c) = c, put N = nu**i - nu2**i,
solve z**N = c in the smallest extension F_{Q^s} where that is possible, and set

    eta  = sigma^i(z) / z
    y    = prod_alpha sigma^alpha(z) ** (nu**(i-1-alpha) * nu2**alpha)
    zeta = eta ** (nu2**i)

Then c * (y**nu * sigma(y)**(-nu2))**(-1) = zeta and zeta**N = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .arith import INT_CAP, Embedding, FiniteField, finite_field
from .errors import NoSolutionError, OutOfRangeError, ZeroElementError

__all__ = ["Lemma5Witness", "lemma5_witness", "frobenius_period"]


@dataclass(frozen=True)
class Lemma5Witness:
    c: int  # in F_Q
    i: int
    zeta: int  # in the ambient field
    y: int
    nu: int
    nu2: int
    q: int
    s: int  # ambient field is F_{Q^s}
    ambient: FiniteField
    c_ambient: int

    @property
    def N(self) -> int:
        return self.nu**self.i - self.nu2**self.i

    def verify(self) -> bool:
        E = self.ambient
        y_sigma = E.pow(self.y, self.q)
        h = E.mul(E.pow(self.y, self.nu), E.pow(y_sigma, -self.nu2))
        lhs = E.mul(self.c_ambient, E.inv(h))
        return lhs == self.zeta and E.pow(self.zeta, abs(self.N)) == 1

    def to_json(self) -> dict:
        E = self.ambient
        return {
            "c": self.c,
            "i": self.i,
            "N": self.N,
            "nu": self.nu,
            "nu2": self.nu2,
            "q": self.q,
            "ambient": f"F_{E.p}^{E.d}",
            "y": E.format(self.y),
            "zeta": E.format(self.zeta),
            "zeta_order": E.element_order(self.zeta),
        }


def frobenius_period(F: FiniteField, c: int, q: int) -> int:
    """Least i >= 1 with c**(q**i) == c."""
    i, x = 1, F.pow(c, q)
    while x != c:
        x = F.pow(x, q)
        i += 1
    return i


def _subfield_degree(F: FiniteField, q: int) -> int:
    k, x = 0, 1
    while x < q:
        x *= F.p
        k += 1
    if x != q or F.d % k:
        raise OutOfRangeError(f"F_{q} is not a subfield of F_{F.size}")
    return k


def lemma5_witness(c: int, F: FiniteField, q: int, nu: int, nu2: int, max_s: int | None = None) -> Lemma5Witness:
    if c == 0:
        raise ZeroElementError("c must be a unit")
    if nu == nu2 or nu < 1 or nu2 < 1:
        raise OutOfRangeError("nu and nu2 must be distinct positive integers")
    _subfield_degree(F, q)
    i = frobenius_period(F, c, q)
    N = nu**i - nu2**i
    n_abs = abs(N)
    s = 1
    while True:
        if F.p ** (F.d * s) > INT_CAP or (max_s is not None and s > max_s):
            raise NoSolutionError(f"z**{N} = c has no root in any F_(Q^s) up to s = {s - 1}; enlarge the field")
        E = finite_field(F.p, F.d * s)
        emb = Embedding.smallest_root(F, E)
        cE = emb(c)
        n = E.order
        g = E.primitive_root
        L = E.dlog(g, cE)
        h = math.gcd(n_abs, n)
        if L % h == 0:
            break
        s += 1
    # z**|N| = c, then flip for negative N
    inv_part = pow(n_abs // h, -1, n // h) if n // h > 1 else 0
    z = E.pow(g, (L // h) * inv_part % n)
    if N < 0:
        z = E.inv(z)
    eta = E.div(E.pow(z, pow(q, i, n)), z)
    omega = sum(q**a * nu ** (i - 1 - a) * nu2**a for a in range(i))
    y = E.pow(z, omega % n)
    zeta = E.pow(eta, nu2**i % n)
    w = Lemma5Witness(c, i, zeta, y, nu, nu2, q, s, E, cE)
    if not w.verify():
        raise AssertionError("witness failed verification")
    return w
