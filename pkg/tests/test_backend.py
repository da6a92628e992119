import os
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from arithdyn import _backend, _kernels_py as py

try:
    from arithdyn import _kernels as cy
except ImportError:  # extension not built
    cy = None

needs_ext = pytest.mark.skipif(cy is None, reason="compiled kernels not built")
PRIMES = [2, 3, 5, 7, 13, 251, 65521, 2147483647, 2305843009213693951]


def polys(max_len=12):
    return st.lists(st.integers(0, 2**62), min_size=0, max_size=max_len)


def monic(p):
    return st.lists(st.integers(0, p - 1), min_size=1, max_size=8).map(lambda c: c + [1])


@needs_ext
@given(st.sampled_from(PRIMES), polys(), polys())
def test_mul_parity(p, a, b):
    a = [c % p for c in a]
    b = [c % p for c in b]
    assert list(cy.poly_mul(a, b, p)) == list(py.poly_mul(a, b, p))


@needs_ext
@given(st.sampled_from(PRIMES), st.data())
def test_rem_powmod_parity(p, data):
    m = data.draw(monic(p))
    a = [c % p for c in data.draw(polys(16))]
    b = [c % p for c in data.draw(polys(8))]
    e = data.draw(st.integers(0, 10**6))
    assert list(cy.poly_rem(a, m, p)) == list(py.poly_rem(a, m, p))
    assert list(cy.poly_mulmod(a, b, m, p)) == list(py.poly_mulmod(a, b, m, p))
    assert list(cy.poly_powmod(a, e, m, p)) == list(py.poly_powmod(a, e, m, p))


@needs_ext
@given(st.integers(1, 3000), st.integers(0, 3000), st.integers(1, 14))
def test_group_kernels_parity(M, q, B):
    q %= M
    assert list(cy.cyclic_subgroup(q, M)) == list(py.cyclic_subgroup(q, M)) if M == 1 or _unit(q, M) else True
    assert sorted(map(tuple, cy.isotropy_scan(q, M, B))) == sorted(map(tuple, py.isotropy_scan(q, M, B)))


def _unit(q, M):
    from math import gcd

    return gcd(q, M) == 1


@needs_ext
@given(st.integers(0, 20000))
def test_sieve_parity(n):
    assert list(cy.prime_sieve(n)) == list(py.prime_sieve(n))


def test_pure_python_switch():
    code = "from arithdyn import _backend; print(_backend.BACKEND)"
    env = dict(os.environ, ARITHDYN_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
    env.pop("ARITHDYN_PURE_PYTHON")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == ("cython" if cy is not None else "python")


def test_selected_backend_matches():
    assert _backend.BACKEND in ("cython", "python")
    if _backend.BACKEND == "cython":
        assert _backend.kernels is cy
