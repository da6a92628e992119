"""Dense univariate polynomials over the prime field F_p.

A polynomial is a list of ints in ``[0, p)``, lowest degree first, with no
trailing zeros; ``[]`` is the zero polynomial. Factorization is squarefree
decomposition, then distinct-degree, then a deterministic equal-degree split.
:func:`factor_exhaustive` is the independent trial-division oracle.
"""

from __future__ import annotations

from ._backend import poly_mul, poly_mulmod, poly_powmod, poly_rem

__all__ = [
    "trim",
    "degree",
    "monic",
    "add",
    "sub",
    "mul",
    "divmod_poly",
    "gcd",
    "derivative",
    "powmod",
    "encode",
    "decode",
    "sort_key",
    "squarefree_decomposition",
    "distinct_degree",
    "equal_degree",
    "factor",
    "factor_exhaustive",
    "is_irreducible",
    "first_irreducible",
    "evaluate",
    "compose_mod",
]


def trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def degree(a) -> int:
    return len(a) - 1


def monic(a: list[int], p: int) -> list[int]:
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def add(a, b, p):
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def sub(a, b, p):
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def mul(a, b, p):
    return poly_mul(a, b, p)


def divmod_poly(a, b, p):
    """Quotient and remainder of ``a`` by nonzero ``b``."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = [c % p for c in a]
    trim(a)
    db = len(b) - 1
    if len(a) <= db:
        return [], a
    inv = pow(b[-1], -1, p)
    q = [0] * (len(a) - db)
    r = list(a)
    for k in range(len(a) - 1, db - 1, -1):
        c = r[k] * inv % p
        if c:
            q[k - db] = c
            for i in range(db + 1):
                r[k - db + i] = (r[k - db + i] - c * b[i]) % p
    return trim(q), trim(r[:db])


def gcd(a, b, p):
    a = trim([c % p for c in a])
    b = trim([c % p for c in b])
    while b:
        a, b = b, divmod_poly(a, b, p)[1]
    return monic(a, p)


def derivative(a, p):
    return trim([i * a[i] % p for i in range(1, len(a))])


def powmod(a, e, m, p):
    """``a**e`` modulo the monic polynomial ``m``."""
    return poly_powmod(a, e, m, p)


def encode(a, p) -> int:
    """Base-``p`` integer of the coefficient list; this fixes the lexicographic order."""
    n = 0
    for c in reversed(a):
        n = n * p + c
    return n


def decode(n: int, p: int) -> list[int]:
    out = []
    while n:
        n, c = divmod(n, p)
        out.append(c)
    return out


def sort_key(a, p):
    return (len(a), encode(a, p))


def evaluate(a, x, p):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def compose_mod(a, h, m, p):
    """``a(h)`` modulo monic ``m`` (Horner)."""
    acc: list[int] = []
    for c in reversed(a):
        acc = poly_mulmod(acc, h, m, p) if acc else []
        acc = poly_rem(add(acc, [c], p), m, p)
    return acc


def _pth_root(a, p):
    return trim([a[i] for i in range(0, len(a), p)])


def squarefree_decomposition(f, p):
    """Pairs ``(g, e)`` with ``f = prod g**e``, each ``g`` monic squarefree, coprime."""
    f = monic(trim([c % p for c in f]), p)
    out = []
    if len(f) <= 1:
        return out
    df = derivative(f, p)
    if not df:
        for g, e in squarefree_decomposition(_pth_root(f, p), p):
            out.append((g, e * p))
        return out
    c = gcd(f, df, p)
    w = divmod_poly(f, c, p)[0]
    i = 1
    while len(w) > 1:
        y = gcd(w, c, p)
        z = divmod_poly(w, y, p)[0]
        if len(z) > 1:
            out.append((monic(z, p), i))
        i += 1
        w = y
        c = divmod_poly(c, y, p)[0]
    if len(c) > 1:
        for g, e in squarefree_decomposition(_pth_root(c, p), p):
            out.append((g, e * p))
    return out


def distinct_degree(f, p):
    """For squarefree monic ``f``: pairs ``(g_d, d)``, ``g_d`` the product of its degree-``d`` factors."""
    f = list(f)
    out = []
    x = poly_rem([0, 1], f, p)
    h = x
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = poly_powmod(h, p, f, p)
        g = gcd(f, sub(h, x, p), p)
        if len(g) > 1:
            out.append((g, d))
            f = divmod_poly(f, g, p)[0]
            h = poly_rem(h, f, p)
            x = poly_rem([0, 1], f, p)
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def _split_candidate(g, a, d, p):
    if p == 2:
        # trace map F_{2^d} -> F_2 applied to a mod g
        t = poly_rem(a, g, p)
        acc = t
        for _ in range(d - 1):
            t = poly_mulmod(t, t, g, p)
            acc = add(acc, t, p)
        return gcd(g, acc, p)
    b = poly_powmod(a, (p**d - 1) // 2, g, p)
    return gcd(g, sub(b, [1], p), p)


def equal_degree(g, d, p):
    """Split monic squarefree ``g`` whose irreducible factors all have degree ``d``."""
    n = len(g) - 1
    if n == d:
        return [g]
    if n == 0:
        return []
    k = p
    limit = p ** min(n, 8) + p + 64
    while k < limit:
        a = decode(k, p)
        k += 1
        h = _split_candidate(g, a, d, p)
        if 1 < len(h) < len(g):
            rest = divmod_poly(g, h, p)[0]
            return sorted(
                equal_degree(h, d, p) + equal_degree(monic(rest, p), d, p),
                key=lambda u: sort_key(u, p),
            )
    raise RuntimeError("equal-degree split failed")  # unreachable for irreducible-degree input


def factor(f, p):
    """Complete factorization of ``f`` mod ``p``: sorted ``(g, e)`` with ``g`` monic irreducible."""
    f = trim([c % p for c in f])
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    out = []
    for part, e in squarefree_decomposition(f, p):
        for g_d, d in distinct_degree(part, p):
            for g in equal_degree(g_d, d, p):
                out.append((g, e))
    out.sort(key=lambda ge: sort_key(ge[0], p))
    return out


def factor_exhaustive(f, p):
    """Trial division by every monic polynomial in increasing order (oracle, small ``p**deg``)."""
    f = monic(trim([c % p for c in f]), p)
    out = []
    d = 1
    while len(f) > 1:
        if 2 * d > len(f) - 1:
            out.append((f, 1))
            break
        # smaller factors are already divided out, so any divisor found here is irreducible
        for low in range(p**d):
            g = (decode(low, p) + [0] * d)[:d] + [1]
            e = 0
            while True:
                q, r = divmod_poly(f, g, p)
                if r:
                    break
                f, e = q, e + 1
            if e:
                out.append((g, e))
        d += 1
    merged: dict[tuple, int] = {}
    for g, e in out:
        merged[tuple(g)] = merged.get(tuple(g), 0) + e
    return sorted(((list(g), e) for g, e in merged.items()), key=lambda ge: sort_key(ge[0], p))


def is_irreducible(f, p) -> bool:
    """Rabin's test."""
    f = monic(trim([c % p for c in f]), p)
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    primes = [r for r in range(2, n + 1) if n % r == 0 and all(r % s for s in range(2, r))]
    for r in primes:
        h = x
        for _ in range(n // r):
            h = poly_powmod(h, p, f, p)
        if len(gcd(f, sub(h, x, p), p)) > 1:
            return False
    h = x
    for _ in range(n):
        h = poly_powmod(h, p, f, p)
    return not sub(h, poly_rem(x, f, p), p)


def first_irreducible(p: int, d: int) -> list[int]:
    """The monic irreducible of degree ``d`` whose lower coefficients encode the smallest integer."""
    for low in range(p**d):
        g = (decode(low, p) + [0] * d)[:d] + [1]
        if is_irreducible(g, p):
            return g
    raise ValueError(f"no irreducible polynomial of degree {d} over F_{p}")
