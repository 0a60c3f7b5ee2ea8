import pytest

from kwatchman import (
    QuotaOutOfRange, budgeted_route, polygon_area, r_min_quota, route_visible_area, solve_quota_k,
    solve_variable_k, visible_area_of_disk,
)
from kwatchman.quota import AREA_SLACK

from conftest import LP, LP_S, SQ, UP, UP_S


def test_disk_area_examples():
    assert visible_area_of_disk(UP, UP_S, 0) == 18
    assert visible_area_of_disk(UP, UP_S, 1) == 20
    assert visible_area_of_disk(LP, LP_S, 5) == polygon_area(LP)


def test_r_min_quota_examples():
    assert r_min_quota(UP, UP_S, 18) == pytest.approx(0, abs=1e-6)
    assert r_min_quota(UP, UP_S, 20) == pytest.approx(1, abs=1e-6)
    assert r_min_quota(LP, LP_S, 0) == 0


def test_r_min_quota_monotone():
    values = [r_min_quota(UP, UP_S, A) for A in (0, 10, 18, 18.5, 19, 19.5, 20)]
    assert values == sorted(values)


def test_quota_out_of_range():
    with pytest.raises(QuotaOutOfRange):
        r_min_quota(UP, UP_S, 21)
    with pytest.raises(QuotaOutOfRange):
        solve_quota_k(UP, UP_S, 2, -1)


def test_budgeted_route_examples():
    assert route_visible_area(UP, [budgeted_route(UP, UP_S, 0, 0.1)]) == 18
    assert route_visible_area(UP, [budgeted_route(UP, UP_S, 2, 0.1)]) == 19
    assert route_visible_area(UP, [budgeted_route(UP, UP_S, 4, 0.1)]) == 20


def test_quota_examples():
    assert solve_quota_k(UP, UP_S, 2, 18, 0.5).max_length == 0
    full = solve_quota_k(UP, UP_S, 2, 20, 0.5)
    assert full.max_length <= 5 and route_visible_area(UP, full.tours) == 20
    assert full.max_length == pytest.approx(solve_variable_k(UP, UP_S, 2, 0.5).max_length)
    assert solve_quota_k(SQ, (0, 0), 2, frac=1).max_length == 0


def test_partial_quota_certificate():
    sol = solve_quota_k(UP, UP_S, 2, 19, 0.5)
    c = sol.certificates
    need = 19 * (1 - AREA_SLACK)
    assert route_visible_area(UP, sol.tours) >= need
    assert c["budget_area"] >= need
    assert c["previous_budget_area"] is None or c["previous_budget_area"] < need
    assert sol.max_length <= c["piece_bound"] + 1e-9
