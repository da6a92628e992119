import json
import os

import pytest
import sympy
from hypothesis import given, strategies as st

from arithdyn.arith import primes_up_to
from arithdyn.errors import NonMaximalError, ReducibleError
from arithdyn.scheme import (
    Census,
    MonogenicOrder,
    cached_census,
    census,
    census_oracle,
    discriminant,
    format_poly,
    is_irreducible_over_q,
    is_maximal_at,
    parse_poly,
    split_prime,
)

ZI = MonogenicOrder.parse("t^2+1")
Z = MonogenicOrder.parse("t")


def test_split_examples():
    pts = split_prime(ZI, 5)
    assert [(x.g, x.e, x.d, x.norm) for x in pts] == [((2, 1), 1, 1, 5), ((3, 1), 1, 1, 5)]
    assert [(x.g, x.e, x.d, x.norm) for x in split_prime(ZI, 7)] == [((1, 0, 1), 1, 2, 49)]
    assert [(x.g, x.e, x.d, x.norm) for x in split_prime(ZI, 2)] == [((1, 1), 2, 1, 2)]


def test_split_nonmaximal_needs_override():
    o = MonogenicOrder.parse("t^2-5")
    with pytest.raises(NonMaximalError):
        split_prime(o, 2)
    assert len(split_prime(o, 2, allow_nonmaximal=True)) == 1


def test_maximal_examples():
    assert is_maximal_at(ZI, 2)
    assert not is_maximal_at(MonogenicOrder.parse("t^2-5"), 2)
    assert is_maximal_at(ZI, 13)


def test_maximal_known_orders():
    # Z[sqrt(-3)] fails at 2; Z[2i] = t^2+4 fails at 2; t^3-2 is maximal everywhere
    assert not is_maximal_at(MonogenicOrder.parse("t^2+3"), 2)
    assert not is_maximal_at(MonogenicOrder.parse("t^2+4"), 2)
    assert all(is_maximal_at(MonogenicOrder.parse("t^3-2"), p) for p in (2, 3, 5))
    # t^2-t-1 is the full ring of integers of Q(sqrt 5)
    assert is_maximal_at(MonogenicOrder.parse("t^2-t-1"), 5)


def test_census_examples():
    assert census(ZI, 10).norms == [2, 5, 5, 9]
    assert census(Z, 6).norms == [2, 3, 5]
    assert census(ZI, 4).norms == [2]


def test_census_reports_skipped():
    c = census(MonogenicOrder.parse("t^2-5"), 30)
    assert c.skipped_primes == (2,)
    assert 2 not in [x.p for x in c]


@pytest.mark.parametrize("poly", ["t", "t^2+1", "t^2-2", "t^3-t-1"])
def test_census_matches_oracle(poly):
    o = MonogenicOrder.parse(poly)
    got = [(x.norm, x.g) for x in census(o, 400)]
    assert got == census_oracle(o, 400)


@pytest.mark.parametrize(
    "poly", ["t^2+1", "t^3-t-1", "t^4+1", "t^5-t-1", "t^6+t^3+1", "t^4-10t^2+1", "t^6-3", "t^3-2"]
)
def test_fundamental_identity(poly):
    o = MonogenicOrder.parse(poly)
    for p in primes_up_to(10**4):
        pts = split_prime(o, p, allow_nonmaximal=True)
        assert sum(x.e * x.d for x in pts) == o.degree


def test_maximal_off_square_discriminant():
    for poly in ["t^3-t-1", "t^2-5", "t^4+1", "t^3-2", "t^2+3"]:
        o = MonogenicOrder.parse(poly)
        for p in primes_up_to(500):
            if o.disc % (p * p):
                assert is_maximal_at(o, p)


def test_discriminant_against_sympy():
    t = sympy.Symbol("t")
    for poly in ["t^2+1", "t^3-t-1", "t^5-t-1", "t^4-10t^2+1", "t^6+t^3+1", "t^3+5t^2-7t+11"]:
        f = parse_poly(poly)
        expect = sympy.discriminant(sympy.Poly(list(reversed(f)), t))
        assert discriminant(f) == expect


@given(st.lists(st.integers(-9, 9), min_size=1, max_size=5))
def test_irreducibility_against_sympy(low):
    f = tuple(low) + (1,)
    t = sympy.Symbol("t")
    assert is_irreducible_over_q(f) == sympy.Poly(list(reversed(f)), t).is_irreducible


def test_reducible_rejected():
    with pytest.raises(ReducibleError):
        MonogenicOrder.parse("t^2-1")
    with pytest.raises(ReducibleError):
        MonogenicOrder.parse("t^4+4")  # Sophie Germain


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=6).filter(lambda c: c[-1] != 0))
def test_poly_text_round_trip(coeffs):
    f = tuple(coeffs)
    assert parse_poly(format_poly(f)) == f


def test_census_json_round_trip():
    c = census(ZI, 60)
    again = Census.from_json(json.loads(json.dumps(c.to_json())))
    assert again == c


def test_cache_round_trip(tmp_path):
    c1, hit1 = cached_census(ZI, 50, tmp_path)
    c2, hit2 = cached_census(ZI, 50, tmp_path)
    assert (hit1, hit2) == (False, True)
    assert c1 == c2
    files = os.listdir(tmp_path)
    assert len(files) == 1 and not files[0].endswith(".tmp")
