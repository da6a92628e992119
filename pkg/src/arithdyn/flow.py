"""The suspension flow over packet points and generic points.

Times are kept exactly as ``sum c_p log p`` with rational ``c_p``, plus an
optional real remainder that is carried along but never decided on. A point
``[P, u]`` is stored with ``log u`` reduced to fractional coefficients: the
integral part ``prod p**floor(c_p)`` is a positive rational and is pushed into
the base through the Q^{>0}-action.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .arith import factorize
from .errors import OutOfRangeError, UnsupportedQueryError
from .packets import PacketPoint, act
from .scheme import ClosedPoint, MonogenicOrder, census

__all__ = [
    "LogTime",
    "GenericPoint",
    "SuspensionPoint",
    "suspend",
    "flow",
    "is_periodic",
    "SpectrumEntry",
    "orbit_length_spectrum",
]


def _log_coeffs(x: Fraction) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for n, sign in ((x.numerator, 1), (x.denominator, -1)):
        if n > 1:
            for p, e in factorize(n):
                out[p] = out.get(p, Fraction(0)) + sign * e
    return out


@dataclass(frozen=True)
class LogTime:
    """``sum coeffs[p] * log p + real``."""

    coeffs: tuple[tuple[int, Fraction], ...] = ()
    real: float = 0.0

    @classmethod
    def make(cls, coeffs: dict[int, Fraction], real: float = 0.0) -> "LogTime":
        items = tuple(sorted((p, Fraction(c)) for p, c in coeffs.items() if c != 0))
        return cls(items, float(real))

    @classmethod
    def log(cls, x, c=1) -> "LogTime":
        """``c * log x`` for a positive rational ``x``."""
        x = Fraction(x)
        if x <= 0:
            raise OutOfRangeError("log of a non-positive number")
        return cls.make({p: e * Fraction(c) for p, e in _log_coeffs(x).items()})

    @classmethod
    def parse(cls, text: str) -> "LogTime":
        """``log 3``, ``2*log(3) - 1/2 log 5``, ``0``; a bare decimal becomes the real part."""
        s = text.replace(" ", "")
        if not s or s in ("0", "+0", "-0"):
            return cls()
        if "log" not in s:
            return cls((), float(s))
        total = cls()
        pos = 0
        term = re.compile(r"([+-]?)(\d+(?:/\d+)?)?\*?log\(?(\d+(?:/\d+)?)\)?")
        while pos < len(s):
            m = term.match(s, pos)
            if not m:
                raise ValueError(f"cannot parse time {text!r}")
            c = Fraction(m.group(2) or 1) * (-1 if m.group(1) == "-" else 1)
            total = total + cls.log(Fraction(m.group(3)), c)
            pos = m.end()
        return total

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.coeffs)

    def __add__(self, other: "LogTime") -> "LogTime":
        d = self.as_dict()
        for p, c in other.coeffs:
            d[p] = d.get(p, Fraction(0)) + c
        return LogTime.make(d, self.real + other.real)

    def __neg__(self) -> "LogTime":
        return LogTime.make({p: -c for p, c in self.coeffs}, -self.real)

    def __sub__(self, other: "LogTime") -> "LogTime":
        return self + (-other)

    def scale(self, k) -> "LogTime":
        k = Fraction(k)
        return LogTime.make({p: c * k for p, c in self.coeffs}, self.real * float(k))

    @property
    def is_exact(self) -> bool:
        return self.real == 0.0

    def is_zero(self) -> bool:
        return not self.coeffs and self.real == 0.0

    def __float__(self) -> float:
        return sum(float(c) * math.log(p) for p, c in self.coeffs) + self.real

    def __str__(self) -> str:
        parts = [f"log({p})" if c == 1 else f"{c}*log({p})" for p, c in self.coeffs]
        if self.real:
            parts.append(repr(self.real))
        return " + ".join(parts) or "0"


@dataclass(frozen=True)
class GenericPoint:
    """A base point off the packets: a generic-fiber character datum ``u mod M``
    with scale ``r``. The Q^{>0}-action only moves ``r``, so it is free."""

    M: int
    u: int
    r: Fraction = Fraction(1)

    def __post_init__(self):
        if self.M < 1 or math.gcd(self.u, self.M) != 1:
            raise OutOfRangeError("u must be a unit mod M")
        object.__setattr__(self, "u", self.u % self.M)
        object.__setattr__(self, "r", Fraction(self.r))
        if self.r <= 0:
            raise OutOfRangeError("r must be positive")


Base = Union[PacketPoint, GenericPoint]


def _act(base: Base, gamma: Fraction) -> Base:
    if gamma == 1:
        return base
    if isinstance(base, PacketPoint):
        return act(base, gamma)
    return GenericPoint(base.M, base.u, base.r * gamma)


@dataclass(frozen=True)
class SuspensionPoint:
    base: Base
    theta: LogTime = field(default_factory=LogTime)

    @property
    def is_packet(self) -> bool:
        return isinstance(self.base, PacketPoint)


def suspend(base: Base, t: LogTime = LogTime()) -> SuspensionPoint:
    """Normal form of ``[base, e**t]``."""
    gamma = Fraction(1)
    frac: dict[int, Fraction] = {}
    for p, c in t.coeffs:
        k = math.floor(c)
        gamma *= Fraction(p) ** k
        if c != k:
            frac[p] = c - k
    return SuspensionPoint(_act(base, gamma), LogTime.make(frac, t.real))


def flow(x: SuspensionPoint, t) -> SuspensionPoint:
    if not isinstance(t, LogTime):
        t = LogTime((), float(t))
    return suspend(x.base, x.theta + t)


def is_periodic(x: SuspensionPoint, t) -> bool:
    """Whether ``flow(x, t) == x``; decided exactly, so ``t`` must be a log-rational combination."""
    if not isinstance(t, LogTime):
        if t == 0:
            return True
        raise UnsupportedQueryError("periodicity needs t as an exact sum of rational multiples of logs")
    if not t.is_exact:
        raise UnsupportedQueryError("periodicity is undecidable for a real-valued time offset")
    return flow(x, t) == x


@dataclass(frozen=True)
class SpectrumEntry:
    norm: int
    multiplicity: int
    points: tuple[ClosedPoint, ...] = ()

    @property
    def length(self) -> LogTime:
        return LogTime.log(self.norm)

    def to_json(self) -> dict:
        return {"norm": self.norm, "length": str(self.length), "length_float": float(self.length), "multiplicity": self.multiplicity}


def orbit_length_spectrum(order: MonogenicOrder, norm_bound: int) -> list[SpectrumEntry]:
    """Packet lengths ``log N x0``, one packet per closed point, grouped by norm."""
    if norm_bound < 2:
        raise OutOfRangeError("norm bound must be >= 2")
    groups: dict[int, list[ClosedPoint]] = {}
    for x in census(order, norm_bound):
        groups.setdefault(x.norm, []).append(x)
    return [SpectrumEntry(n, len(v), tuple(v)) for n, v in sorted(groups.items())]
