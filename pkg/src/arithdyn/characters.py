"""Level-M characters of the roots of unity at a closed point.

A character is stored as an exponent ``a mod M``: it sends ``y`` in the
order-``M`` subgroup of ``F_{q^j}^x`` to ``zeta_M ** (a * e)``, where
``y = g ** (e * (q**j - 1) / M)`` for the canonical generator ``g``.
Values come back as exponents mod ``M``; nothing is floating point.

``headroom`` certifies that ``gcd(a, M)`` is the true kernel order. The
Frobenius action refuses to run past the level rather than guessing a lift.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import cached_property

from . import gfpoly
from .arith import Embedding, FiniteField, finite_field, mult_order, prime_to_part, factorize
from .errors import (
    HeadroomError,
    IncompatiblePointsError,
    InsufficientLevelError,
    LevelMismatchError,
    NotCoprimeError,
    OutOfRangeError,
    ZeroElementError,
)
from .scheme import ClosedPoint, MonogenicOrder, format_poly, split_prime

__all__ = [
    "residue_field",
    "residue_of",
    "TruncatedCharacter",
    "char_value",
    "frobenius",
    "galois_twist",
    "rho",
    "ColimitPoint",
    "normalize",
    "OrderMap",
    "lower_point",
    "pushforward",
    "generic_fixed_point_obstruction",
]


def residue_field(point: ClosedPoint) -> FiniteField:
    """kappa(x0) = F_p[t]/(g), elements encoded in base p."""
    return finite_field(point.p, point.d, tuple(point.g))


def residue_of(point: ClosedPoint, r) -> int:
    """Image of the order element ``r`` (integer poly in t) in kappa(x0)."""
    p = point.p
    red = gfpoly.divmod_poly([c % p for c in r], list(point.g), p)[1]
    return gfpoly.encode(red, p)


@dataclass(frozen=True)
class TruncatedCharacter:
    point: ClosedPoint
    M: int
    a: int
    j: int = 0
    headroom: bool = True

    def __post_init__(self):
        p, q, M = self.point.p, self.point.norm, self.M
        if M < 1:
            raise OutOfRangeError("level must be positive")
        if M % p == 0:
            raise NotCoprimeError(f"level {M} shares a factor with p = {p}")
        j = self.j or (1 if M == 1 else mult_order(q, M))
        if (q**j - 1) % M:
            raise LevelMismatchError(f"mu_{M} is not inside F_{q}^{j}")
        object.__setattr__(self, "j", j)
        object.__setattr__(self, "a", self.a % M)

    @property
    def p(self) -> int:
        return self.point.p

    @property
    def q(self) -> int:
        return self.point.norm

    @property
    def kernel(self) -> int:
        return math.gcd(self.a, self.M)

    @cached_property
    def field(self) -> FiniteField:
        """The level field F_{q^j} holding mu_M."""
        return finite_field(self.p, self.point.d * self.j)

    @cached_property
    def embedding(self) -> Embedding:
        """kappa(x0) into the level field."""
        return Embedding.smallest_root(residue_field(self.point), self.field)

    @cached_property
    def mu_generator(self) -> int:
        """Generator of mu_M on which the character takes the value zeta_M ** a."""
        U = self.field
        return U.pow(U.primitive_root, U.order // self.M)

    def value_at(self, y: int) -> int:
        return char_value(self, y)

    def to_json(self) -> dict:
        return {
            "poly": format_poly(self.point.order.f),
            "g": list(self.point.g),
            "p": self.p,
            "j": self.j,
            "M": self.M,
            "a": self.a,
            "headroom": self.headroom,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "TruncatedCharacter":
        order = MonogenicOrder.parse(obj["poly"])
        g = tuple(obj["g"])
        pts = [x for x in split_prime(order, obj["p"], allow_nonmaximal=True) if x.g == g]
        if not pts:
            raise IncompatiblePointsError(f"{format_poly(g)} is not a prime of {order} over {obj['p']}")
        return cls(pts[0], obj["M"], obj["a"], obj["j"], obj["headroom"])


def char_value(chi: TruncatedCharacter, y: int, *, residue: bool = False) -> int:
    """Exponent ``v`` with ``chi(y) = zeta_M ** v``.

    ``y`` lives in the level field F_{q^j}; pass ``residue=True`` to hand in an
    element of kappa(x0) instead.
    """
    if y == 0:
        raise ZeroElementError("character undefined at 0: the multiplicative map sends 0 to 0")
    U = chi.field
    if residue:
        y = chi.embedding(y)
    e = U.dlog(U.primitive_root, y)
    step = U.order // chi.M
    if e % step:
        raise LevelMismatchError(f"element is not in mu_{chi.M}")
    return chi.a * (e // step) % chi.M


def frobenius(chi: TruncatedCharacter, nu: int) -> TruncatedCharacter:
    """Precompose with the ``nu``-th power map: ``a -> nu * a``."""
    if nu < 1:
        raise OutOfRangeError("nu must be a positive integer")
    nu_x = prime_to_part(nu, chi.p)
    need = nu_x * chi.kernel
    if chi.M % need:
        minimal = chi.M * need // math.gcd(chi.M, need)
        raise InsufficientLevelError(
            f"F_{nu} needs {need} | M but M = {chi.M}; rebuild at level {minimal}", minimal
        )
    return replace(chi, a=nu * chi.a % chi.M)


def galois_twist(chi: TruncatedCharacter, k: int) -> TruncatedCharacter:
    if chi.M == 1:
        return chi
    return replace(chi, a=chi.a * pow(chi.q, k, chi.M) % chi.M)


def rho(chi: TruncatedCharacter) -> int:
    """Kernel order gcd(a, M), meaningful only with certified headroom."""
    if not chi.headroom:
        raise HeadroomError("kernel order is not certified at this level")
    return chi.kernel


@dataclass(frozen=True)
class ColimitPoint:
    """The formal preimage F_denom^{-1}(char)."""

    denom: int
    char: TruncatedCharacter

    def __post_init__(self):
        if self.denom < 1:
            raise OutOfRangeError("denominator must be positive")


def _divide_once(chi: TruncatedCharacter, ell: int) -> TruncatedCharacter | None:
    """chi' with F_ell(chi') = chi and certified headroom, if one exists."""
    M, a = chi.M, chi.a
    if ell == chi.p:
        # p acts invertibly on mu_M
        return replace(chi, a=a * pow(ell, -1, M) % M) if M > 1 else chi
    if a % ell:
        return None
    a2 = a // ell
    if M % (ell * math.gcd(a2, M)):
        return None
    return replace(chi, a=a2)


def normalize(pt: ColimitPoint) -> ColimitPoint:
    denom, chi = pt.denom, pt.char
    # p always divides out exactly; doing it first keeps the result canonical
    while denom > 1 and denom % chi.p == 0:
        denom //= chi.p
        chi = _divide_once(chi, chi.p)
    progress = True
    while progress and denom > 1:
        progress = False
        for ell in factorize(denom).primes:
            smaller = _divide_once(chi, ell)
            if smaller is not None:
                denom //= ell
                chi = smaller
                progress = True
                break
    return ColimitPoint(denom, chi)


def colimit_equal(x: ColimitPoint, y: ColimitPoint) -> bool:
    """F_n^{-1}(P) = F_m^{-1}(P') iff F_m(P) = F_n(P')."""
    return frobenius(x.char, y.denom) == frobenius(y.char, x.denom)


@dataclass(frozen=True)
class OrderMap:
    """Inclusion Z[t']/(f') -> Z[t]/(f) sending t' to ``image`` (a poly in t)."""

    source: MonogenicOrder
    target: MonogenicOrder
    image: tuple[int, ...]

    def __post_init__(self):
        # f'(h) must vanish in Z[t]/(f)
        acc = [0]
        for c in reversed(self.source.f):
            acc = _zmul(acc, self.image)
            acc[0] += c
        f = list(self.target.f)
        rem = _zrem(acc, f)
        if any(rem):
            raise IncompatiblePointsError("image of t' does not satisfy f'")

    @classmethod
    def from_integers(cls, target: MonogenicOrder) -> "OrderMap":
        return cls(MonogenicOrder((0, 1)), target, (0,))


def _zmul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for k, y in enumerate(b):
            out[i + k] += x * y
    return out


def _zrem(a, f):
    """Remainder modulo monic integer f."""
    r = list(a)
    n = len(f) - 1
    for k in range(len(r) - 1, n - 1, -1):
        c = r[k]
        if c:
            for i in range(n + 1):
                r[k - n + i] -= c * f[i]
    return r[:n] if len(r) > n else r


def lower_point(fmap: OrderMap, point: ClosedPoint) -> ClosedPoint:
    """The closed point of the source lying under ``point``."""
    if point.order != fmap.target:
        raise IncompatiblePointsError("point does not lie on the target order")
    p = point.p
    K = residue_field(point)
    h = K.element(fmap.image)
    for x in split_prime(fmap.source, p, allow_nonmaximal=True):
        if K.eval_poly(x.g, h) == 0:
            return x
    raise IncompatiblePointsError("no source prime lies under this point")


def pushforward(chi: TruncatedCharacter, fmap: OrderMap) -> TruncatedCharacter:
    """Restrict ``chi`` along the residue map kappa(x') -> kappa(x).

    The level drops to ``M' = gcd(M, q' - 1)``. The exponent is read off on the
    canonical generator of mu_{M'} in kappa(x'), so it depends on both fields'
    generator conventions, not just on ``a mod M'``.
    """
    x = chi.point
    xl = lower_point(fmap, x)
    q_low = xl.norm
    M_low = math.gcd(chi.M, q_low - 1)
    if M_low == 1:
        return TruncatedCharacter(xl, 1, 0, 1, chi.headroom)
    L = residue_field(xl)
    K = residue_field(x)
    y = L.pow(L.primitive_root, L.order // M_low)
    # y as a poly in t', then t' -> h in kappa(x)
    h = K.element(fmap.image)
    y_up = K.eval_poly(L.coeffs(y), h)
    v = char_value(chi, chi.embedding(y_up))
    w, r = divmod(v, chi.M // M_low)
    assert r == 0, "image of mu_M' must land in mu_M'"
    return TruncatedCharacter(xl, M_low, w, 1, chi.headroom)


def generic_fixed_point_obstruction(rank: int, nu: int, nu2: int) -> int:
    """Rational rank of the kernel forced on a character of a free rank-``rank``
    group fixed by F_nu / F_nu2: chi ** (nu - nu2) = 1 kills everything when nu != nu2."""
    if rank < 0 or nu < 1 or nu2 < 1:
        raise OutOfRangeError("rank must be >= 0 and nu, nu2 positive")
    return rank if nu != nu2 else 0
