"""Pure-Python implementations of the hot loops.

Same signatures as the compiled ``_kernels`` extension; selected by
:mod:`arithdyn._backend` when the extension is missing or disabled.
Polynomials are lists of ints, lowest degree first, with no trailing zeros.
"""

from math import gcd


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _trim([c % p for c in out])


def poly_rem(a, m, p):
    """Remainder of ``a`` modulo the monic polynomial ``m``."""
    d = len(m) - 1
    r = [c % p for c in a]
    for k in range(len(r) - 1, d - 1, -1):
        c = r[k]
        if c:
            off = k - d
            for i in range(d):
                r[off + i] = (r[off + i] - c * m[i]) % p
            r[k] = 0
    return _trim(r[:d] if len(r) > d else r)


def poly_mulmod(a, b, m, p):
    return poly_rem(poly_mul(a, b, p), m, p)


def poly_powmod(a, e, m, p):
    result = poly_rem([1], m, p)
    base = poly_rem(list(a), m, p)
    while e > 0:
        if e & 1:
            result = poly_mulmod(result, base, m, p)
        e >>= 1
        if e:
            base = poly_mulmod(base, base, m, p)
    return result


def cyclic_subgroup(q, M):
    """Sorted list of the powers of ``q`` modulo ``M``."""
    if M == 1:
        return [0]
    seen = []
    x = 1 % M
    mark = bytearray(M)
    while not mark[x]:
        mark[x] = 1
        seen.append(x)
        x = x * q % M
    return sorted(seen)


def isotropy_scan(q, M, B):
    """Coprime pairs (nu, nu2), both <= B, with nu == nu2 * q**k (mod M) for some k >= 0."""
    if M == 1:
        return [(n, m) for n in range(1, B + 1) for m in range(1, B + 1) if gcd(n, m) == 1]
    powers = []
    mark = bytearray(M)
    x = 1 % M
    while not mark[x]:
        mark[x] = 1
        powers.append(x)
        x = x * q % M
    out = []
    for nu2 in range(1, B + 1):
        hit = bytearray(M)
        for h in powers:
            hit[nu2 * h % M] = 1
        for nu in range(1, B + 1):
            if gcd(nu, nu2) == 1 and hit[nu % M]:
                out.append((nu, nu2))
    out.sort()
    return out


def prime_sieve(n):
    if n < 2:
        return []
    flags = bytearray([1]) * (n + 1)
    flags[0] = flags[1] = 0
    i = 2
    while i * i <= n:
        if flags[i]:
            flags[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
        i += 1
    return [i for i in range(n + 1) if flags[i]]
