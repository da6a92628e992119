import math
import random

import mpmath
import pytest

from arithdyn.characters import TruncatedCharacter, frobenius, galois_twist
from arithdyn.errors import LevelMismatchError, OutOfRangeError, UnsupportedFieldError
from arithdyn.flow import orbit_length_spectrum
from arithdyn.scheme import MonogenicOrder, split_prime
from arithdyn.witt import cyclotomic_poly
from arithdyn.zeta import (
    RestrictedCharacter,
    catalog_for_order,
    component_count,
    component_label,
    cyclotomic_field,
    euler_partial,
    field_q,
    quadratic_field,
    ruelle_partial,
    tail_bound,
)

Z = MonogenicOrder.parse("t")
ZI = MonogenicOrder.parse("t^2+1")


def _zeta2_oracle(N=10**6):
    s = math.fsum(1.0 / (n * n) for n in range(1, N + 1))
    return s + 1.0 / N - 0.5 / N**2


def _l_chi4_oracle(N=10**6):
    # alternating series, the error is below the first omitted term
    return math.fsum((1 if k % 2 == 0 else -1) / (2 * k + 1) ** 2 for k in range(N))


def test_zeta_z_at_2():
    z = euler_partial(Z, 2, 10**5)
    assert abs(float(z.value) - _zeta2_oracle()) < 1e-5
    assert abs(float(z.value) - math.pi**2 / 6) < 1e-5
    assert float(z.value) < math.pi**2 / 6  # partial products increase to the limit
    assert (math.pi**2 / 6) / float(z.value) - 1 < z.tail_bound


def test_zeta_gaussian_at_2():
    z = euler_partial(ZI, 2, 10**4)
    oracle = _zeta2_oracle() * _l_chi4_oracle()
    assert abs(float(z.value) - oracle) < 2e-3
    assert abs(float(z.value) - 1.50676) < 2e-3


def test_empty_product():
    for order in (Z, ZI):
        z = euler_partial(order, 3, 1)
        assert z.value == 1 and z.factors == ()


def test_errors_and_skipped():
    with pytest.raises(OutOfRangeError):
        euler_partial(Z, 1, 100)
    with pytest.raises(OutOfRangeError):
        euler_partial(Z, 2, 100, precision=40)
    z = euler_partial(MonogenicOrder.parse("t^2+3"), 2, 100)
    assert z.skipped_primes == (2,)
    assert all(n % 2 for n, _ in z.factors)


def test_shuffled_product_agrees():
    z = euler_partial(ZI, mpmath.mpf(3) / 2, 3000, precision=120)
    factors = list(z.factors)
    random.Random(1).shuffle(factors)
    with mpmath.workprec(120):
        v = mpmath.mpf(1)
        for n, m in factors:
            v *= (1 - mpmath.mpf(n) ** (-z.s)) ** (-m)
        logsum = mpmath.fsum(-m * mpmath.log(1 - mpmath.mpf(n) ** (-z.s)) for n, m in factors)
        assert abs(v / z.value - 1) < mpmath.mpf(2) ** -100
        assert abs(logsum - z.log_value()) < mpmath.mpf(2) ** -100


@pytest.mark.parametrize("order", [Z, ZI, MonogenicOrder.parse("t^2-t-1"), MonogenicOrder(cyclotomic_poly(7))])
@pytest.mark.parametrize("bound", [1, 2, 100, 2000])
def test_ruelle_matches_euler(order, bound):
    e = euler_partial(order, 2, bound)
    r = ruelle_partial(order, 2, bound)
    assert r.factors == e.factors
    assert abs(r.value - e.value) <= mpmath.mpf(2) ** -70 * e.value
    if bound >= 2:
        spec = orbit_length_spectrum(order, bound)
        assert [(s.norm, s.multiplicity) for s in spec] == list(r.factors)


def test_tail_bound_shrinks():
    b = [tail_bound(2, 2.0, X) for X in (10, 100, 1000)]
    assert b[0] > b[1] > b[2] > 0


def test_partial_zeta_json_and_csv():
    z = euler_partial(Z, 2, 20)
    d = z.to_json()
    assert d["n_factors"] == 8 and d["precision_bits"] == 80
    lines = z.factors_csv().splitlines()
    assert lines[0] == "norm,multiplicity" and lines[1] == "2,1"


def test_catalog():
    assert component_count(field_q()) == 1
    assert component_count(quadratic_field(-4)) == 2
    assert component_count(cyclotomic_field(7)) == 6
    assert cyclotomic_field(14) == cyclotomic_field(7)
    assert catalog_for_order(ZI) == quadratic_field(-4)
    assert catalog_for_order(MonogenicOrder.parse("t^2-5")) == quadratic_field(5)
    assert catalog_for_order(MonogenicOrder(cyclotomic_poly(7))) == cyclotomic_field(7)
    assert catalog_for_order(Z) == field_q()
    with pytest.raises(UnsupportedFieldError):
        quadratic_field(-3 * 4)
    with pytest.raises(UnsupportedFieldError):
        catalog_for_order(MonogenicOrder.parse("t^3-2"))


def test_label_example():
    assert component_label(RestrictedCharacter(1, 7, 12), quadratic_field(-4)) == 3
    with pytest.raises(LevelMismatchError):
        component_label(RestrictedCharacter(1, 1, 6), quadratic_field(-4))


def _image(entry, M, rng):
    """A random unit mod M in the image of the cyclotomic character of the field."""
    m = entry.label_modulus
    while True:
        c = rng.randrange(1, 50 * M)
        if math.gcd(c, M) == 1 and (m == 1 or c % m in entry._kernel):
            return c


ENTRIES = [field_q(), quadratic_field(-4), quadratic_field(5), quadratic_field(-8), cyclotomic_field(7), cyclotomic_field(12)]


@pytest.mark.parametrize("entry", ENTRIES, ids=lambda e: e.label)
def test_label_count_and_invariance(entry):
    rng = random.Random(entry.param)
    m = entry.label_modulus
    labels = set()
    for _ in range(1000):
        k = rng.choice([1, 2, 3, 4, 6])
        M = m * k * rng.choice([1, 2, 3, 5, 6])
        u = rng.randrange(M // k)
        while math.gcd(u, M // k) != 1:
            u = rng.randrange(M // k)
        chi = RestrictedCharacter(k, u, M)
        lab = component_label(chi, entry)
        labels.add(lab)
        assert component_label(chi.twist(_image(entry, M, rng)), entry) == lab
        for nu in (2, 3, 5):
            if (M // k) % (nu * m) == 0:
                assert component_label(chi.frobenius(nu), entry) == lab
    assert len(labels) == component_count(entry)


def test_label_invariance_on_truncated_characters():
    # points of Z[i] have q = 1 mod 4, so their twists stay in the cyclotomic image
    entry = quadratic_field(-4)
    rng = random.Random(3)
    for p in (5, 13, 3, 29):
        for x in split_prime(ZI, p):
            for _ in range(50):
                M = 4 * rng.choice([1, 2, 3, 4, 6, 9])
                if M % p == 0:
                    continue
                a = rng.randrange(M)
                chi = TruncatedCharacter(x, M, a)
                g = math.gcd(a, M)
                if (M // g) % 4:
                    continue
                lab = component_label(chi, entry)
                assert component_label(galois_twist(chi, rng.randrange(-3, 4)), entry) == lab
                for nu in (2, 3):
                    if (M // g) % (4 * nu) == 0:
                        assert component_label(frobenius(chi, nu), entry) == lab
