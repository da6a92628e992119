import cmath
import json
import random

import pytest
import sympy
from hypothesis import given, strategies as st

from arithdyn.characters import TruncatedCharacter, frobenius
from arithdyn.errors import InsufficientLevelError, LevelMismatchError, ReconstructionOverflowError, ZeroElementError
from arithdyn.scheme import MonogenicOrder, census, split_prime
from arithdyn.witt import (
    CyclotomicInt,
    TeichCombo,
    WittRat,
    cyclotomic_poly,
    evaluate,
    frobenius_w,
    from_power_sums,
    ghost,
    power_sums,
    teich,
    verschiebung,
    witt_add,
    witt_mul,
    witt_neg,
    zero_set,
)

Z = MonogenicOrder.parse("t")
ZI = MonogenicOrder.parse("t^2+1")
W = WittRat.make


def random_witt(rng, total=4, c=9):
    dn = rng.randrange(0, total + 1)
    dd = rng.randrange(0, total - dn + 1)
    num = [1] + [rng.randrange(-c, c + 1) for _ in range(dn)]
    den = [1] + [rng.randrange(-c, c + 1) for _ in range(dd)]
    return W(num, den)


def test_examples():
    assert teich(3) == W((1, -3))
    assert ghost(teich(3), 3).entries == (3, 9, 27)
    s = witt_add(teich(2), teich(3))
    assert s == W((1, -5, 6))
    assert ghost(s, 3).entries == (5, 13, 35)
    w = W((1, 2, -7), (1, 4))
    assert witt_add(w, witt_neg(w)) == W((1,))
    assert witt_mul(teich(2), teich(3)) == teich(6)
    assert witt_mul(W((1, -5, 6)), teich(5)) == W((1, -25, 150))
    assert witt_mul(w, teich(1)) == w
    assert frobenius_w(teich(2), 2) == teich(4)
    assert frobenius_w(W((1, -5, 6)), 2) == W((1, -13, 36))
    assert verschiebung(teich(3), 2) == W((1, 0, -3))
    assert ghost(teich(1), 4).entries == (1, 1, 1, 1)
    assert ghost(witt_neg(teich(2)), 3).entries == (-2, -4, -8)


def test_reduction_cancels_common_factors():
    w = W((1, -5, 6), (1, -2))
    assert w == teich(3)
    assert W(w.num, w.den).degree == 1


def test_ghost_homomorphism_sweep():
    rng = random.Random(11)
    for _ in range(2000):
        a, b = random_witt(rng), random_witt(rng)
        ga, gb = ghost(a, 12), ghost(b, 12)
        assert ghost(a + b, 12) == ga + gb
        assert ghost(a * b, 12) == ga * gb


def test_frobenius_verschiebung_laws():
    rng = random.Random(12)
    for _ in range(150):
        w = random_witt(rng, total=3, c=5)
        g = ghost(w, 36)
        for nu in range(1, 7):
            f = frobenius_w(w, nu)
            v = verschiebung(w, nu)
            assert ghost(f, 6).entries == tuple(g[nu * n] for n in range(1, 7))
            gv = ghost(v, 12)
            for n in range(1, 13):
                assert gv[n] == (nu * g[n // nu] if n % nu == 0 else 0)
            assert ghost(frobenius_w(v, nu), 12).entries == tuple(nu * x for x in g.entries[:12])
            for mu in range(1, 7 if nu < 4 else 3):
                assert frobenius_w(frobenius_w(w, mu), nu) == frobenius_w(w, nu * mu)


def test_frobenius_is_ring_map():
    rng = random.Random(13)
    for _ in range(200):
        a, b = random_witt(rng, 3, 6), random_witt(rng, 3, 6)
        for nu in (2, 3):
            assert frobenius_w(a * b, nu) == frobenius_w(a, nu) * frobenius_w(b, nu)
            assert frobenius_w(a + b, nu) == frobenius_w(a, nu) + frobenius_w(b, nu)


@given(st.integers(-50, 50), st.integers(-50, 50))
def test_teichmuller_multiplicative(r, s):
    assert witt_mul(teich(r), teich(s)) == teich(r * s)


def _oracle_mul(w1, w2):
    """Product of rational functions via resultants: prod (1 - alpha gamma t) = Res_x(A_rev(x), C(x t))."""
    x, t = sympy.symbols("x t")

    def part(A, C):
        if len(A) == 1 or len(C) == 1:
            return sympy.Integer(1)
        arev = sum(c * x ** (len(A) - 1 - i) for i, c in enumerate(A))
        cxt = sum(c * (x * t) ** i for i, c in enumerate(C))
        r = sympy.expand(sympy.resultant(arev, cxt, x))
        return r / r.subs(t, 0)  # sympy's sign convention can flip the constant term

    num = sympy.Poly(part(w1.num, w2.num) * part(w1.den, w2.den), t)
    den = sympy.Poly(part(w1.num, w2.den) * part(w1.den, w2.num), t)
    return W([int(c) for c in reversed(num.all_coeffs())], [int(c) for c in reversed(den.all_coeffs())])


def test_mul_against_resultant_oracle():
    rng = random.Random(14)
    for _ in range(1000):
        a, b = random_witt(rng, 3, 9), random_witt(rng, 3, 9)
        assert witt_mul(a, b) == _oracle_mul(a, b)


def test_power_sum_round_trip():
    rng = random.Random(15)
    for _ in range(500):
        poly = [1] + [rng.randrange(-20, 21) for _ in range(rng.randrange(0, 7))]
        while len(poly) > 1 and poly[-1] == 0:
            poly.pop()
        assert from_power_sums(power_sums(poly, len(poly) - 1), len(poly) - 1) == tuple(poly)
    with pytest.raises(ReconstructionOverflowError):
        from_power_sums([1, 0], 2)


def test_json_round_trip():
    w = W((1, 3, -2), (1, 7))
    assert WittRat.from_json(json.loads(json.dumps(w.to_json()))) == w


def test_cyclotomic_values():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)
    for M in (3, 4, 5, 8, 12, 15):
        z = cmath.exp(2j * cmath.pi / M)
        for e in range(2 * M):
            v = CyclotomicInt.from_exponents(M, {e: 1}) + CyclotomicInt.from_exponents(M, {0: 2})
            assert abs(complex(v) - (z**e + 2)) < 1e-9
        # sum of all M-th roots of unity vanishes
        assert CyclotomicInt.from_exponents(M, {e: 1 for e in range(M)}).is_zero()


def test_evaluate_examples():
    chi = TruncatedCharacter(split_prime(Z, 5)[0], 4, 1)
    v = evaluate(TeichCombo.of(Z, 2), chi)
    assert v == CyclotomicInt.from_exponents(4, {1: 1})
    assert evaluate(TeichCombo.of(Z, 5), chi).is_zero()
    lhs = evaluate(TeichCombo.of(Z, 2).frobenius(2), chi)
    rhs = evaluate(TeichCombo.of(Z, 2), frobenius(chi, 2))
    assert lhs == rhs == CyclotomicInt.from_exponents(4, {2: 1})
    with pytest.raises(LevelMismatchError):
        evaluate(TeichCombo.of(ZI, 2), chi)


def _elements(order, rng, n, c=12):
    return [tuple(rng.randrange(-c, c + 1) for _ in range(order.degree)) for _ in range(n)]


def _chars(order, rng, n):
    points = list(census(order, 200))
    out = []
    for _ in range(n):
        x = rng.choice(points)
        M = x.norm - 1
        out.append(TruncatedCharacter(x, M, rng.randrange(M)))
    return out


@pytest.mark.parametrize("order", [Z, ZI])
def test_evaluate_ring_map(order):
    rng = random.Random(16)
    for chi in _chars(order, rng, 100):
        els = _elements(order, rng, 4)
        a = TeichCombo.of(order, *els[:2], signs=[1, -1])
        b = TeichCombo.of(order, *els[2:])
        va, vb = evaluate(a, chi), evaluate(b, chi)
        assert evaluate(a + b, chi) == va + vb
        assert evaluate(a * b, chi) == va * vb
        assert evaluate(-a, chi) == -va


@pytest.mark.parametrize("order", [Z, ZI])
def test_evaluate_frobenius_equivariant(order):
    rng = random.Random(17)
    checked = 0
    for chi in _chars(order, rng, 300):
        psi = TeichCombo.of(order, *_elements(order, rng, 3), signs=[1, 1, -1])
        nu = rng.randrange(1, 9)
        try:
            rhs = evaluate(psi, frobenius(chi, nu))
        except InsufficientLevelError:
            continue
        assert evaluate(psi.frobenius(nu), chi) == rhs
        checked += 1
    assert checked >= 100


def test_zero_set_examples():
    assert [x.p for x in zero_set(Z, 10, 100)] == [2, 5]
    zs = zero_set(ZI, (1, 2), 50)
    assert len(zs) == 1 and zs[0].p == 5 and zs[0].g == (3, 1)
    assert zero_set(Z, 1, 100) == []
    with pytest.raises(ZeroElementError):
        zero_set(ZI, (0, 0), 10)
    with pytest.raises(ZeroElementError):
        zero_set(ZI, (1, 0, 1), 10)  # t^2 + 1 = 0 in Z[i]


@pytest.mark.parametrize("order", [Z, ZI])
def test_zero_set_matches_vanishing(order):
    rng = random.Random(18)
    points = list(census(order, 200))
    for r0 in _elements(order, rng, 20, c=30):
        if not any(r0):
            continue
        zs = set(zero_set(order, r0, 200))
        for x in points:
            chi = TruncatedCharacter(x, x.norm - 1, 1)
            vanishes = evaluate(TeichCombo.of(order, r0), chi).is_zero()
            assert vanishes == (x in zs)


def test_to_witt_over_z():
    psi = TeichCombo.of(Z, 2, 3, signs=[1, -1])
    assert psi.to_witt() == W((1, -2), (1, -3))
    with pytest.raises(ValueError):
        TeichCombo.of(ZI, 2).to_witt()
