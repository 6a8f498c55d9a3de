"""
Тесты арифметики GF(p).
"""

import numpy as np
import pytest

from apps.xl.exceptions import CompositeModulus, DivisionByZero
from apps.xl.services.field_service import make_field


@pytest.mark.parametrize("p", [2, 13, 3109, 5011])
def test_make_field_accepts_primes(p):
    assert make_field(p).order == p


@pytest.mark.parametrize("p", [0, 1, 15, 3109 * 5011])
def test_make_field_rejects_composites(p):
    with pytest.raises(CompositeModulus):
        make_field(p)


def test_inverse_small_cases():
    gf5 = make_field(5)
    assert gf5.inv(1) == 1
    assert gf5.inv(2) == 3


def test_inverse_of_zero_raises(gf13):
    with pytest.raises(DivisionByZero):
        gf13.inv(0)
    with pytest.raises(DivisionByZero):
        gf13.inv_fermat(13)


def test_inverse_random_elements(gf3109):
    rng = np.random.default_rng(1)
    for a in rng.integers(1, 3109, size=500):
        inverse = gf3109.inv(int(a))
        assert gf3109(a) * inverse == 1
        assert inverse == gf3109.inv_fermat(int(a))
        assert gf3109.inv(inverse) == a


def test_pow_conventions(gf13):
    assert gf13.pow(0, 0) == 1
    assert gf13.pow(7, 0) == 1
    assert gf13.pow(2, 4) == 3
    with pytest.raises(ValueError):
        gf13.pow(2, -1)


def test_fermat_little_theorem():
    gf = make_field(5011)
    rng = np.random.default_rng(2)
    for a in rng.integers(1, 5011, size=100):
        assert gf.pow(int(a), 5010) == 1


def test_pow_matches_repeated_multiplication(gf13):
    for a in range(13):
        product = gf13.one()
        for e in range(8):
            assert gf13.pow(a, e) == product
            product = product * gf13(a)


def test_pow_exponent_addition(gf3109):
    rng = np.random.default_rng(3)
    for a, e1, e2 in rng.integers(0, 3109, size=(50, 3)):
        left = gf3109.pow(int(a), int(e1) + int(e2))
        assert left == gf3109.pow(int(a), int(e1)) * gf3109.pow(int(a), int(e2))


def test_field_axioms_on_random_triples(gf3109):
    rng = np.random.default_rng(4)
    a, b, c = (gf3109(rng.integers(0, 3109, size=200)) for _ in range(3))
    assert np.array_equal(a + b, b + a)
    assert np.array_equal(a * b, b * a)
    assert np.array_equal((a * b) * c, a * (b * c))
    assert np.array_equal(a * (b + c), a * b + a * c)


def test_residue_reduces_negative_values(gf13):
    assert gf13.residue(-1) == 12
    assert gf13(-1) == 12
    assert str(gf13) == "GF(13)"
