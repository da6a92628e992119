import json

import pytest

from arithdyn.arith import finite_field
from arithdyn.errors import NoSolutionError, OutOfRangeError, ZeroElementError
from arithdyn.lemma5 import frobenius_period, lemma5_witness

CONFIGS = [(3, 2, 2, 1), (3, 4, 2, 1), (5, 2, 3, 1), (2, 4, 3, 2)]  # (p, d, nu, nu2), q = p


def _naive_mul(x, y, mod, p):
    """Schoolbook product of coefficient lists, reduced by the monic modulus."""
    out = [0] * (len(x) + len(y) - 1)
    for i, a in enumerate(x):
        for k, b in enumerate(y):
            out[i + k] = (out[i + k] + a * b) % p
    n = len(mod) - 1
    for k in range(len(out) - 1, n - 1, -1):
        c = out[k]
        if c:
            for i in range(n + 1):
                out[k - n + i] = (out[k - n + i] - c * mod[i]) % p
    out = out[:n] + [0] * max(0, n - len(out))
    return out


def _naive_pow(x, e, mod, p):
    acc = [1] + [0] * (len(mod) - 2)
    for _ in range(e):
        acc = _naive_mul(acc, x, mod, p)
    return acc


def _coeffs(n, p, d):
    return [(n // p**i) % p for i in range(d)]


def _naive_check(w):
    """c * (y**nu * sigma(y)**-nu2)**-1 == zeta, i.e. c == zeta * y**nu * sigma(y)**-nu2,
    checked as c * sigma(y)**nu2 == zeta * y**nu with repeated schoolbook products."""
    E = w.ambient
    p, d, mod = E.p, E.d, list(E.modulus)
    y = _coeffs(w.y, p, d)
    sy = _naive_pow(y, w.q, mod, p)
    lhs = _naive_mul(_coeffs(w.c_ambient, p, d), _naive_pow(sy, w.nu2, mod, p), mod, p)
    rhs = _naive_mul(_coeffs(w.zeta, p, d), _naive_pow(y, w.nu, mod, p), mod, p)
    return lhs == rhs


@pytest.mark.parametrize("p,d,nu,nu2", CONFIGS)
def test_surjective_exhaustive(p, d, nu, nu2):
    F = finite_field(p, d)
    seen_s = set()
    for c in range(1, F.size):
        w = lemma5_witness(c, F, p, nu, nu2)
        assert w.verify()
        E = w.ambient
        assert E.pow(w.zeta, abs(w.N)) == 1
        assert w.N == nu**w.i - nu2**w.i
        assert F.pow(c, p**w.i) == c
        seen_s.add(w.s)
        if c < 40:
            assert _naive_check(w)
    assert 1 in seen_s


def test_trivial_element():
    F = finite_field(3, 2)
    w = lemma5_witness(1, F, 3, 2, 1)
    assert (w.i, w.zeta, w.y) == (1, 1, 1)


def test_f9_generator():
    F = finite_field(3, 2)
    g = F.primitive_root
    w = lemma5_witness(g, F, 3, 2, 1)
    assert w.i in (1, 2)
    assert w.ambient.pow(w.zeta, 2**w.i - 1) == 1


def test_negative_exponent():
    # nu < nu2 makes N negative
    F = finite_field(5, 2)
    for c in range(1, F.size):
        w = lemma5_witness(c, F, 5, 1, 2)
        assert w.N < 0 and w.verify()


def test_frobenius_period_matches_subfields():
    F = finite_field(2, 4)
    periods = [frobenius_period(F, c, 2) for c in range(1, 16)]
    assert periods.count(1) == 1 and periods.count(2) == 2 and periods.count(4) == 12


def test_errors():
    F = finite_field(3, 2)
    with pytest.raises(ZeroElementError):
        lemma5_witness(0, F, 3, 2, 1)
    with pytest.raises(OutOfRangeError):
        lemma5_witness(1, F, 3, 2, 2)
    with pytest.raises(OutOfRangeError):
        lemma5_witness(1, F, 27, 2, 1)
    with pytest.raises(NoSolutionError):
        # z**8 = c needs F_{81} for a generator of F_9
        lemma5_witness(F.primitive_root, F, 9, 9, 1, max_s=1)


def test_witness_json():
    F = finite_field(2, 4)
    d = lemma5_witness(7, F, 2, 3, 2).to_json()
    assert json.loads(json.dumps(d))["N"] == 3 ** d["i"] - 2 ** d["i"]
