"""Spec Z[t]/(f) for monic irreducible ``f``: closed points and maximality.

Integer polynomials are tuples of ints, constant term first. A closed point
is a pair ``(p, g)`` with ``g`` a monic irreducible factor of ``f mod p``.
"""

from __future__ import annotations

import hashlib
import json
import os
import re
import tempfile
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from pathlib import Path

from . import gfpoly
from .arith import is_prime, primes_up_to
from .errors import NonMaximalError, OutOfRangeError, ReducibleError

__all__ = [
    "parse_poly",
    "format_poly",
    "discriminant",
    "is_irreducible_over_q",
    "MonogenicOrder",
    "ClosedPoint",
    "Census",
    "split_prime",
    "is_maximal_at",
    "census",
    "census_oracle",
    "cached_census",
    "SCHEMA_VERSION",
]

SCHEMA_VERSION = 1

_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*(t(?:\s*\^\s*(\d+))?)?")


def parse_poly(text: str) -> tuple[int, ...]:
    """Parse ``t^3-t-1``-style input (``x`` is accepted for ``t``)."""
    s = text.replace(" ", "").replace("x", "t").replace("**", "^")
    if not s:
        raise ValueError("empty polynomial")
    coeffs: dict[int, int] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (not m.group(2) and not m.group(3)):
            raise ValueError(f"cannot parse polynomial {text!r} near {s[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        c = int(m.group(2)) if m.group(2) else 1
        e = (int(m.group(4)) if m.group(4) else 1) if m.group(3) else 0
        coeffs[e] = coeffs.get(e, 0) + sign * c
        pos = m.end()
        if pos < len(s) and s[pos] not in "+-":
            raise ValueError(f"cannot parse polynomial {text!r}")
    n = max(coeffs)
    out = [coeffs.get(i, 0) for i in range(n + 1)]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out)


def format_poly(f, var: str = "t") -> str:
    parts = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if c == 0:
            continue
        mon = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        mag = abs(c)
        body = str(mag) if (mag != 1 or not mon) else ""
        body += mon
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    return head + "".join(s + b for s, b in parts[1:])


def _det_bareiss(rows: list[list[int]]) -> int:
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def resultant(f, g) -> int:
    m, n = len(f) - 1, len(g) - 1
    if m == 0:
        return f[0] ** n
    if n == 0:
        return g[0] ** m
    size = m + n
    rows = []
    hf, hg = list(reversed(f)), list(reversed(g))
    for i in range(n):
        rows.append([0] * i + hf + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + hg + [0] * (size - n - 1 - i))
    return _det_bareiss(rows)


def discriminant(f) -> int:
    """Discriminant of a monic integer polynomial."""
    n = len(f) - 1
    if n < 1:
        raise ValueError("constant polynomial has no discriminant")
    if n == 1:
        return 1
    df = tuple(i * f[i] for i in range(1, n + 1))
    sgn = -1 if (n * (n - 1) // 2) % 2 else 1
    return sgn * resultant(f, df)


def _subset_degrees(degs: list[int]) -> set[int]:
    sums = {0}
    for d in degs:
        sums |= {s + d for s in sums}
    return sums


@lru_cache(maxsize=512)
def is_irreducible_over_q(f: tuple[int, ...]) -> bool:
    """Irreducibility of a monic integer polynomial over Q.

    Intersects the possible factor degrees across good primes; if that leaves
    only ``{0, n}`` the answer is certified. Otherwise defer to sympy.
    """
    n = len(f) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    disc = discriminant(f)
    if disc == 0:
        return False
    allowed = set(range(n + 1))
    tried = 0
    for p in primes_up_to(2000):
        if disc % p == 0:
            continue
        degs = [len(g) - 1 for g, _ in gfpoly.factor(list(f), p)]
        allowed &= _subset_degrees(degs)
        tried += 1
        if allowed == {0, n}:
            return True
        if tried >= 60:
            break
    import sympy  # only reached for Galois groups without an n-cycle-style certificate

    t = sympy.Symbol("t")
    poly = sympy.Poly(list(reversed(f)), t, domain="ZZ")
    return bool(poly.is_irreducible)


@dataclass(frozen=True)
class MonogenicOrder:
    """The order Z[t]/(f). ``f = t`` is Spec Z."""

    f: tuple[int, ...]

    def __post_init__(self):
        f = tuple(int(c) for c in self.f)
        while len(f) > 1 and f[-1] == 0:
            f = f[:-1]
        object.__setattr__(self, "f", f)
        if len(f) < 2:
            raise OutOfRangeError("degree must be at least 1")
        if f[-1] != 1:
            raise ValueError("polynomial must be monic")
        if not is_irreducible_over_q(f):
            raise ReducibleError(f"{format_poly(f)} is reducible over Q")

    @classmethod
    def parse(cls, text: str) -> "MonogenicOrder":
        return cls(parse_poly(text))

    @property
    def degree(self) -> int:
        return len(self.f) - 1

    @cached_property
    def disc(self) -> int:
        return discriminant(self.f)

    def __str__(self):
        return format_poly(self.f)

    def reduce(self, r, p: int) -> list[int]:
        """Reduction of an element (integer poly in t) mod (p, f)."""
        return gfpoly.divmod_poly([c % p for c in r], [c % p for c in self.f], p)[1]


@dataclass(frozen=True, order=False)
class ClosedPoint:
    order: MonogenicOrder
    p: int
    g: tuple[int, ...]
    e: int

    @property
    def d(self) -> int:
        return len(self.g) - 1

    @property
    def norm(self) -> int:
        return self.p**self.d

    def sort_key(self):
        return (self.norm, self.p, gfpoly.sort_key(list(self.g), self.p))

    def contains(self, r) -> bool:
        """Whether the element ``r`` (integer poly in t) lies in the prime (p, g)."""
        red = gfpoly.trim([c % self.p for c in r])
        if not red:
            return True
        return not gfpoly.divmod_poly(red, list(self.g), self.p)[1]

    def to_json(self) -> dict:
        return {"p": self.p, "g_coeffs": list(self.g), "e": self.e, "d": self.d, "norm": self.norm}

    @classmethod
    def from_json(cls, order: "MonogenicOrder", obj: dict) -> "ClosedPoint":
        return cls(order, obj["p"], tuple(obj["g_coeffs"]), obj["e"])

    def __repr__(self):
        return f"ClosedPoint(f={self.order}, p={self.p}, g={format_poly(self.g)}, e={self.e}, d={self.d})"


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise OutOfRangeError(f"{p} is not prime")


def _factor_mod(order: MonogenicOrder, p: int):
    f = order.f
    if order.degree == 1:
        return [([f[0] % p, 1], 1)]
    return gfpoly.factor(list(f), p)


def is_maximal_at(order: MonogenicOrder, p: int) -> bool:
    """Dedekind criterion."""
    _check_prime(p)
    if order.disc % (p * p):
        return True
    facs = _factor_mod(order, p)
    g, h = [1], [1]
    for gi, ei in facs:
        g = _zmul(g, gi)
        for _ in range(ei - 1):
            h = _zmul(h, gi)
    gh = _zmul(g, h)
    diff = [(gh[i] if i < len(gh) else 0) - (order.f[i] if i < len(order.f) else 0) for i in range(max(len(gh), len(order.f)))]
    assert all(c % p == 0 for c in diff)
    F = [c // p for c in diff]
    return len(gfpoly.gcd(gfpoly.gcd(F, g, p), h, p)) == 1


def _zmul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def split_prime(order: MonogenicOrder, p: int, allow_nonmaximal: bool = False) -> list[ClosedPoint]:
    _check_prime(p)
    if not allow_nonmaximal and not is_maximal_at(order, p):
        raise NonMaximalError(f"Z[t]/({order}) is not maximal at {p}")
    pts = [ClosedPoint(order, p, tuple(g), e) for g, e in _factor_mod(order, p)]
    pts.sort(key=lambda x: gfpoly.sort_key(list(x.g), p))
    return pts


@dataclass(frozen=True)
class Census:
    order: MonogenicOrder
    norm_bound: int
    points: tuple[ClosedPoint, ...]
    skipped_primes: tuple[int, ...] = field(default=())

    @property
    def norms(self) -> list[int]:
        return [x.norm for x in self.points]

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "poly": format_poly(self.order.f),
            "norm_bound": self.norm_bound,
            "points": [x.to_json() for x in self.points],
            "skipped_primes": list(self.skipped_primes),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Census":
        if obj.get("schema_version") != SCHEMA_VERSION:
            raise ValueError("census schema version mismatch")
        order = MonogenicOrder.parse(obj["poly"])
        pts = tuple(ClosedPoint.from_json(order, x) for x in obj["points"])
        return cls(order, obj["norm_bound"], pts, tuple(obj["skipped_primes"]))


def census(order: MonogenicOrder, norm_bound: int) -> Census:
    """Closed points of norm at most ``norm_bound`` over primes where the order is maximal."""
    pts: list[ClosedPoint] = []
    skipped = []
    for p in primes_up_to(norm_bound):
        if order.disc % (p * p) == 0 and not is_maximal_at(order, p):
            skipped.append(p)
            continue
        for x in split_prime(order, p, allow_nonmaximal=True):
            if x.norm <= norm_bound:
                pts.append(x)
    pts.sort(key=ClosedPoint.sort_key)
    return Census(order, norm_bound, tuple(pts), tuple(skipped))


def census_oracle(order: MonogenicOrder, norm_bound: int) -> list[tuple[int, tuple[int, ...]]]:
    """Independent check: enumerate monic irreducibles ``g`` of degree ``d`` with
    ``p**d <= bound`` and test ``g | f mod p`` by division. Maximal primes only."""
    out = []
    for p in primes_up_to(norm_bound):
        if not is_maximal_at(order, p):
            continue
        d = 1
        while p**d <= norm_bound:
            for low in range(p**d):
                g = (gfpoly.decode(low, p) + [0] * d)[:d] + [1]
                if not gfpoly.is_irreducible(g, p):
                    continue
                if not gfpoly.divmod_poly([c % p for c in order.f], g, p)[1]:
                    out.append((p**d, p, tuple(g)))
            d += 1
    out.sort(key=lambda t: (t[0], t[1], gfpoly.sort_key(list(t[2]), t[1])))
    return [(n, g) for n, _, g in out]


def _cache_dir(explicit=None) -> Path:
    if explicit:
        return Path(explicit)
    env = os.environ.get("ARITHDYN_CACHE_DIR")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "arithdyn"


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def cached_census(order: MonogenicOrder, norm_bound: int, cache_dir=None) -> tuple[Census, bool]:
    """Census through the on-disk cache. Returns ``(census, hit)``."""
    root = _cache_dir(cache_dir)
    key = hashlib.sha256(f"v{SCHEMA_VERSION}|{format_poly(order.f)}|{norm_bound}".encode()).hexdigest()[:24]
    path = root / f"census-{key}.json"
    if path.exists():
        try:
            obj = json.loads(path.read_text())
            if obj.get("schema_version") == SCHEMA_VERSION:
                return Census.from_json(obj), True
        except (ValueError, KeyError):
            pass  # corrupt or stale: recompute
    result = census(order, norm_bound)
    root.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=root, prefix=".census-", suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        fh.write(_dump(result.to_json()))
    os.replace(tmp, path)
    return result, False
