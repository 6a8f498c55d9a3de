"""
Тесты мономов, многочленов, порядка XL и текстового формата систем.
"""

from itertools import product
from math import comb

import numpy as np
import pytest

from apps.xl.exceptions import DimensionMismatch, ParseError
from apps.xl.services.field_service import make_field
from apps.xl.services.oracle_service import exhaustive_solve
from apps.xl.services.polynomial_service import (
    Monomial,
    Polynomial,
    PolySystem,
    XLOrder,
    enumerate_monomials,
    evaluate,
    format_system,
    monomial_value,
    multiply,
    parse_polynomial,
    SystemService,
    parse_system,
    plant_solution,
    random_system,
)


def poly(field, n, text):
    return parse_polynomial(text, field, n)


def _count_recursive(n, D):
    # число векторов показателей длины n с суммой <= D
    if n == 0:
        return 1
    return sum(_count_recursive(n - 1, D - e) for e in range(D + 1))


def test_enumerate_small_cases():
    monomials = enumerate_monomials(2, 2)
    assert len(monomials) == 6
    assert [m.exponents for m in monomials[-3:]] == [(0, 0), (1, 0), (2, 0)]

    univariate = enumerate_monomials(1, 3)
    assert [m.exponents for m in univariate] == [(0,), (1,), (2,), (3,)]


def test_enumerate_count_matches_recursive_count():
    assert len(enumerate_monomials(3, 18)) == 1330 == _count_recursive(3, 18)


@pytest.mark.parametrize("n", range(1, 7))
def test_enumerate_count_is_binomial(n):
    for D in range(0, 21, 4):
        monomials = enumerate_monomials(n, D)
        assert len(monomials) == comb(n + D, n)
        assert len(set(monomials)) == len(monomials)
        assert all(m.degree <= D for m in monomials)


def test_pure_first_block_is_last():
    n, D = 3, 5
    monomials = enumerate_monomials(n, D)
    tail = monomials[-(D + 1):]
    assert [m.exponents for m in tail] == [(k, 0, 0) for k in range(D + 1)]
    assert not any(m.is_pure_first() for m in monomials[: -(D + 1)])


def test_xl_order_is_strict_total_order():
    order = XLOrder(3, 4)
    monomials = enumerate_monomials(3, 4)
    rng = np.random.default_rng(5)
    for i, j, k in rng.integers(0, len(monomials), size=(300, 3)):
        a, b, c = monomials[i], monomials[j], monomials[k]
        assert order.compare(a, b) == -order.compare(b, a)
        assert (order.compare(a, b) == 0) == (a == b)
        if order.compare(a, b) < 0 and order.compare(b, c) < 0:
            assert order.compare(a, c) < 0


def test_multiply_examples(gf13):
    f = poly(gf13, 2, "x1 + x2")
    assert multiply(f, Monomial.one(2)) == f
    assert multiply(f, Monomial((1, 0))) == poly(gf13, 2, "x1^2 + x1*x2")


def test_multiply_degree_and_evaluation(gf3109):
    rng = np.random.default_rng(6)
    system = random_system(2, 1, 3, gf3109, seed=11)
    shifts = enumerate_monomials(2, 3)
    for index in range(200):
        f = system.polys[index % 3]
        mono = shifts[int(rng.integers(0, len(shifts)))]
        shifted = multiply(f, mono)
        assert shifted.degree == f.degree + mono.degree
        for point in rng.integers(0, 3109, size=(5, 2)):
            point = [int(x) for x in point]
            assert evaluate(shifted, point) == evaluate(f, point) * monomial_value(
                mono, point, gf3109
            )


def test_evaluate_examples():
    gf5 = make_field(5)
    assert evaluate(Polynomial.constant(gf5, 2, 7), (3, 4)) == 2
    assert evaluate(poly(gf5, 2, "x1*x2 + 1"), (2, 3)) == 2
    with pytest.raises(DimensionMismatch):
        evaluate(poly(gf5, 2, "x1"), (1,))


def test_evaluate_distributes_over_addition(gf3109):
    rng = np.random.default_rng(7)
    for seed in range(100):
        f, g = random_system(2, 1, 2, gf3109, seed=seed).polys[:2]
        point = [int(x) for x in rng.integers(0, 3109, size=2)]
        assert evaluate(f.add(g), point) == evaluate(f, point) + evaluate(g, point)


def test_random_system_is_deterministic(gf3109):
    first = random_system(2, 1, 3, gf3109, seed=42)
    second = random_system(2, 1, 3, gf3109, seed=42)
    assert first == second
    assert first != random_system(2, 1, 3, gf3109, seed=43)
    assert all(len(f.terms) <= comb(2 + 3, 2) for f in first.polys)
    assert first.degrees == (3, 3, 3)
    assert first.c == 1


def test_random_coefficients_look_uniform():
    gf7 = make_field(7)
    counts = np.zeros(7)
    for seed in range(500):
        for f in random_system(2, 1, 2, gf7, seed=seed).polys:
            present = f.as_dict()
            for mono in enumerate_monomials(2, 2):
                counts[present.get(mono, 0)] += 1
    expected = counts.sum() / 7
    chi_squared = ((counts - expected) ** 2 / expected).sum()
    # 6 степеней свободы, порог с большим запасом
    assert chi_squared < 40


def test_plant_solution(gf13):
    system = random_system(3, 2, 2, gf13, seed=3)
    point = (1, 5, 12)
    planted = plant_solution(system, point)
    assert all(evaluate(f, point) == 0 for f in planted.polys)
    assert plant_solution(planted, point) == planted
    with pytest.raises(DimensionMismatch):
        plant_solution(system, (1, 2))


def test_system_service_keeps_top_degree_part():
    gf3 = make_field(3)
    for seed in range(50):
        system = SystemService(gf3, seed=seed).random(1, 1, 2)
        assert all(not f.homogeneous_part(2).is_zero() for f in system.polys)


def test_system_service_draws_from_one_stream(gf3109):
    service = SystemService(gf3109, seed=42)
    first = service.random(2, 1, 3)
    assert first == random_system(2, 1, 3, gf3109, seed=42)
    assert service.random(2, 1, 3) != first
    with pytest.raises(ValueError):
        service.random(2, 0, 3)


def test_system_service_planted(gf13):
    point = (1, 5, 12)
    planted = SystemService(gf13, seed=3).planted(3, 2, 2, point)
    assert planted == plant_solution(random_system(3, 2, 2, gf13, seed=3), point)
    assert all(evaluate(f, point) == 0 for f in planted.polys)


def test_planted_point_found_by_exhaustive_search(planted_gf13):
    system, point = planted_gf13
    assert point in exhaustive_solve(system).solutions


def test_substitute_first(gf13):
    f = poly(gf13, 3, "2*x1^2*x2 + x1*x3 + 5")
    g = f.substitute_first(3)
    assert g.n == 2
    assert g == poly(gf13, 2, "5*x1 + 3*x2 + 5")
    for y, z in product(range(13), repeat=2):
        assert evaluate(g, (y, z)) == evaluate(f, (3, y, z))


def test_poly_system_validation(gf13):
    f = poly(gf13, 2, "x1 + x2")
    with pytest.raises(ValueError):
        PolySystem(field=gf13, n=2, polys=(f,))
    with pytest.raises(DimensionMismatch):
        PolySystem(field=gf13, n=2, polys=(f, poly(gf13, 3, "x3")))
    single = PolySystem(field=gf13, n=1, polys=(poly(gf13, 1, "x1^2 - 1"),))
    assert single.c == 0


def test_parse_and_format_polynomial(gf13):
    f = poly(gf13, 2, "3*x1^2*x2 - x2 + 15")
    assert f.coefficient(Monomial((2, 1))) == 3
    assert f.coefficient(Monomial((0, 1))) == 12
    assert f.coefficient(Monomial.one(2)) == 2
    assert parse_polynomial(str(f), gf13, 2) == f
    assert str(Polynomial.from_terms(gf13, 2, {})) == "0"
    assert poly(gf13, 2, "0").is_zero()


@pytest.mark.parametrize("text", ["x3", "y1", "2*x1^", "x1 + + x2", "x1^300"])
def test_parse_polynomial_errors(gf13, text):
    with pytest.raises(ParseError):
        parse_polynomial(text, gf13, 2)


def test_parse_system():
    text = """
    # пример
    p=7 n=2
    x1^2 - 1
    x1*x2 + x2   # комментарий
    x1 - x2
    """
    system = parse_system(text)
    assert system.field.modulus == 7
    assert system.n == 2
    assert len(system.polys) == 3
    assert parse_system(format_system(system)) == system


@pytest.mark.parametrize(
    "text",
    [
        "",
        "p=7\nx1",
        "p=15 n=1\nx1",
        "p=7 n=2\nx1\nx2",
        "p=7 n=2\nx1\n0\nx2",
    ],
)
def test_parse_system_errors(text):
    with pytest.raises(ParseError):
        parse_system(text)
