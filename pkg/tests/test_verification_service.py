"""
Тесты перекрёстных проверок, включая отрицательный контроль.
"""

import pytest

from apps.xl.services.multinomial_service import OrdinaryMultinomialRow, om_row
from apps.xl.services.verification_service import SCOPES, VerificationService


def small_service(**overrides):
    params = dict(seed=5, grid_N=6, grid_s=3, matrices=6, planted_systems=4)
    params.update(overrides)
    return VerificationService(**params)


def corrupted_rows(N, s):
    row = om_row(N, s)
    if (N, s) != (2, 3):
        return row
    return OrdinaryMultinomialRow(N=2, s=3, values=(1, 2, 3, 4, 2, 3, 1))


@pytest.mark.parametrize("scope", SCOPES)
def test_each_scope_passes(scope):
    (result,) = small_service().run([scope])
    assert result.scope == scope
    assert result.passed, result.detail
    assert result.checked > 0


def test_solve_compares_every_planted_system():
    (result,) = small_service().run(["solve"])
    assert result.passed, result.detail
    assert result.checked == 4


def test_run_keeps_scope_order():
    results = small_service().run(["unimodality", "rank"])
    assert [result.scope for result in results] == ["unimodality", "rank"]


def test_unknown_scope_is_rejected():
    with pytest.raises(ValueError):
        small_service().run(["rank", "speed"])


def test_corrupted_row_is_caught():
    service = small_service(row_provider=corrupted_rows)
    multinomial, unimodality = service.run(["multinomial", "unimodality"])
    assert not multinomial.passed
    assert "N=2" in multinomial.detail
    assert not unimodality.passed


@pytest.mark.slow
def test_full_verification():
    results = VerificationService(seed=1, planted_systems=50).run()
    assert all(result.passed for result in results), [r.detail for r in results]
    solve = next(result for result in results if result.scope == "solve")
    assert solve.checked == 50
