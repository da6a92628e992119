# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops. Mirrors ``_kernels_py`` exactly.

Coefficients and moduli must fit in 31 bits so that products fit in a
signed 64-bit accumulator.
"""

from libc.stdlib cimport malloc, free, calloc
from math import gcd

from . import _kernels_py as _py

ctypedef long long i64

cdef i64 P_LIMIT = 2147483648  # wider primes go to the Python twins


cdef list _to_list(i64* buf, Py_ssize_t n):
    while n > 0 and buf[n - 1] == 0:
        n -= 1
    return [buf[i] for i in range(n)]


cdef void _mul_raw(i64* a, Py_ssize_t na, i64* b, Py_ssize_t nb, i64* out, i64 p) noexcept nogil:
    cdef Py_ssize_t i, j
    cdef i64 ai
    for i in range(na + nb - 1):
        out[i] = 0
    for i in range(na):
        ai = a[i]
        if ai:
            for j in range(nb):
                out[i + j] = (out[i + j] + ai * b[j]) % p


cdef Py_ssize_t _rem_raw(i64* r, Py_ssize_t n, i64* m, Py_ssize_t d, i64 p) noexcept nogil:
    cdef Py_ssize_t k, i, off
    cdef i64 c
    for k in range(n - 1, d - 1, -1):
        c = r[k]
        if c:
            off = k - d
            for i in range(d):
                r[off + i] = (r[off + i] - c * m[i]) % p
                if r[off + i] < 0:
                    r[off + i] += p
            r[k] = 0
    if n > d:
        n = d
    return n


cdef i64* _load(object a, Py_ssize_t size, i64 p) except NULL:
    cdef i64* buf = <i64*> calloc(size if size > 0 else 1, sizeof(i64))
    cdef Py_ssize_t i
    if buf == NULL:
        raise MemoryError()
    for i in range(len(a)):
        buf[i] = a[i] % p
    return buf


def poly_mul(a, b, p):
    if p >= P_LIMIT:
        return _py.poly_mul(a, b, p)
    return _poly_mul(a, b, p)


def _poly_mul(a, b, long long p):
    cdef Py_ssize_t na = len(a), nb = len(b)
    if na == 0 or nb == 0:
        return []
    cdef i64* x = _load(a, na, p)
    cdef i64* y = _load(b, nb, p)
    cdef i64* out = <i64*> malloc((na + nb - 1) * sizeof(i64))
    _mul_raw(x, na, y, nb, out, p)
    res = _to_list(out, na + nb - 1)
    free(x); free(y); free(out)
    return res


def poly_rem(a, m, p):
    if p >= P_LIMIT:
        return _py.poly_rem(a, m, p)
    return _poly_rem(a, m, p)


def _poly_rem(a, m, long long p):
    cdef Py_ssize_t n = len(a), d = len(m) - 1
    cdef i64* r = _load(a, n, p)
    cdef i64* mm = _load(m, d + 1, p)
    n = _rem_raw(r, n, mm, d, p)
    res = _to_list(r, n)
    free(r); free(mm)
    return res


def poly_mulmod(a, b, m, p):
    if p >= P_LIMIT:
        return _py.poly_mulmod(a, b, m, p)
    return _poly_mulmod(a, b, m, p)


def _poly_mulmod(a, b, m, long long p):
    cdef Py_ssize_t na = len(a), nb = len(b), d = len(m) - 1, n
    if na == 0 or nb == 0:
        return []
    cdef i64* x = _load(a, na, p)
    cdef i64* y = _load(b, nb, p)
    cdef i64* mm = _load(m, d + 1, p)
    cdef i64* out = <i64*> malloc((na + nb - 1) * sizeof(i64))
    _mul_raw(x, na, y, nb, out, p)
    n = _rem_raw(out, na + nb - 1, mm, d, p)
    res = _to_list(out, n)
    free(x); free(y); free(mm); free(out)
    return res


def poly_powmod(a, e, m, p):
    if p >= P_LIMIT:
        return _py.poly_powmod(a, e, m, p)
    return _poly_powmod(a, e, m, p)


def _poly_powmod(a, e, m, long long p):
    cdef Py_ssize_t d = len(m) - 1, i, nb, nr, n
    cdef i64* mm = _load(m, d + 1, p)
    cdef i64* base = <i64*> calloc(max(len(a), d, 1), sizeof(i64))
    cdef i64* res = <i64*> calloc(max(d, 1), sizeof(i64))
    cdef i64* tmp = <i64*> calloc(max(2 * d, 1), sizeof(i64))
    for i in range(len(a)):
        base[i] = a[i] % p
    nb = _rem_raw(base, len(a), mm, d, p)
    res[0] = 1 % p
    nr = 1 if d > 0 else 0
    e = int(e)
    while e > 0:
        if e & 1:
            if nr and nb:
                _mul_raw(res, nr, base, nb, tmp, p)
                n = _rem_raw(tmp, nr + nb - 1, mm, d, p)
                for i in range(n):
                    res[i] = tmp[i]
                nr = n
            else:
                nr = 0
        e >>= 1
        if e and nb:
            _mul_raw(base, nb, base, nb, tmp, p)
            n = _rem_raw(tmp, 2 * nb - 1, mm, d, p)
            for i in range(n):
                base[i] = tmp[i]
            nb = n
    out = _to_list(res, nr)
    free(mm); free(base); free(res); free(tmp)
    return out


def cyclic_subgroup(long long q, long long M):
    if M == 1:
        return [0]
    cdef unsigned char* mark = <unsigned char*> calloc(M, 1)
    cdef i64 x = 1 % M
    out = []
    while not mark[x]:
        mark[x] = 1
        out.append(x)
        x = (x * q) % M
    free(mark)
    out.sort()
    return out


def isotropy_scan(long long q, long long M, long long B):
    cdef long long nu, nu2, x, h
    cdef Py_ssize_t i, npow = 0
    if M == 1:
        return [(n, m) for n in range(1, B + 1) for m in range(1, B + 1) if gcd(n, m) == 1]
    cdef unsigned char* mark = <unsigned char*> calloc(M, 1)
    cdef unsigned char* hit = <unsigned char*> calloc(M, 1)
    cdef i64* powers = <i64*> malloc(M * sizeof(i64))
    x = 1 % M
    while not mark[x]:
        mark[x] = 1
        powers[npow] = x
        npow += 1
        x = (x * q) % M
    out = []
    for nu2 in range(1, B + 1):
        for i in range(npow):
            hit[(nu2 * powers[i]) % M] = 1
        for nu in range(1, B + 1):
            if hit[nu % M] and gcd(nu, nu2) == 1:
                out.append((nu, nu2))
        for i in range(npow):
            hit[(nu2 * powers[i]) % M] = 0
    free(mark); free(hit); free(powers)
    out.sort()
    return out


def prime_sieve(long long n):
    if n < 2:
        return []
    cdef unsigned char* flags = <unsigned char*> malloc(n + 1)
    cdef long long i, j
    for i in range(n + 1):
        flags[i] = 1
    flags[0] = 0
    flags[1] = 0
    i = 2
    while i * i <= n:
        if flags[i]:
            j = i * i
            while j <= n:
                flags[j] = 0
                j += i
        i += 1
    out = [i for i in range(n + 1) if flags[i]]
    free(flags)
    return out
