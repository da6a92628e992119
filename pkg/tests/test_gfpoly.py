from hypothesis import given, strategies as st

from arithdyn import gfpoly


def _expand(factors, p):
    out = [1]
    for g, e in factors:
        for _ in range(e):
            out = gfpoly.mul(out, g, p)
    return out


@st.composite
def poly_mod_p(draw, primes=(2, 3, 5, 7, 11), max_deg=8):
    p = draw(st.sampled_from(primes))
    n = draw(st.integers(1, max_deg))
    coeffs = draw(st.lists(st.integers(0, p - 1), min_size=n, max_size=n))
    return p, coeffs + [1]


@given(poly_mod_p())
def test_factor_matches_exhaustive(case):
    p, f = case
    assert gfpoly.factor(f, p) == gfpoly.factor_exhaustive(f, p)


@given(poly_mod_p(primes=(2, 3, 5, 13, 101), max_deg=12))
def test_factor_reconstructs(case):
    p, f = case
    facs = gfpoly.factor(f, p)
    assert _expand(facs, p) == f
    assert all(gfpoly.is_irreducible(g, p) for g, _ in facs)


def test_repeated_and_pth_power_factors():
    p = 3
    f = _expand([([1, 1], 3), ([2, 0, 1], 1), ([1, 0, 1], 2)], p)
    # x^2+2 = (x+1)(x+2) mod 3, so it splits further
    assert gfpoly.factor(f, p) == gfpoly.factor_exhaustive(f, p)
    assert _expand(gfpoly.factor(f, p), p) == f


def test_irreducible_counts():
    # number of monic irreducibles of degree n over F_p (Gauss)
    def count(p, n):
        return sum(gfpoly.is_irreducible((gfpoly.decode(low, p) + [0] * n)[:n] + [1], p) for low in range(p**n))

    assert count(2, 4) == 3
    assert count(3, 3) == 8
    assert count(5, 2) == 10


def test_encode_order_is_lex():
    p = 5
    xs = [gfpoly.decode(n, p) for n in range(200)]
    assert [gfpoly.encode(x, p) for x in xs] == list(range(200))
