from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from kwatchman import (
    TooLarge, brute_force_l1, brute_force_l2_discretized, compute_r_min, essential_cuts,
    random_orthogonal_polygon, validate_polygon,
)

from conftest import LP, LP_S, SQ, UP, UP_S, corpus


def test_l1_oracle_examples():
    assert brute_force_l1(UP, UP_S, 2).max_length == 2
    assert brute_force_l1(UP, UP_S, 1).max_length == 4
    assert brute_force_l1(SQ, (0, 0), 3).max_length == 0


def test_l1_oracle_limits():
    with pytest.raises(TooLarge):
        brute_force_l1(UP, UP_S, 4)


def test_l2_oracle_examples():
    assert brute_force_l2_discretized(UP, UP_S, 2, Fraction(1, 4)).max_length == pytest.approx(2)
    assert brute_force_l2_discretized(LP, LP_S, 1, Fraction(1, 4)).max_length == pytest.approx(4)
    assert brute_force_l2_discretized(SQ, (0, 0), 2, Fraction(1, 4)).max_length == 0


def test_generator_rectangle_and_determinism():
    P, s = random_orthogonal_polygon(4, 7)
    assert P.n == 4 and P.is_orthogonal and P.on_boundary(s)
    again = random_orthogonal_polygon(12, 3)
    assert again == random_orthogonal_polygon(12, 3)


def test_generator_hundred_seeds():
    for seed in range(100):
        P, s = random_orthogonal_polygon(12, seed)
        Q = validate_polygon(P.vertices)
        assert Q.is_orthogonal and P.n <= 14 and P.on_boundary(s)


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(corpus()[:20]), st.sampled_from([Fraction(1), Fraction(1, 2)]), st.integers(1, 2))
def test_l2_oracle_refines_downward(inst, h, k):
    _, P, s = inst
    coarse = brute_force_l2_discretized(P, s, k, h).max_length
    fine = brute_force_l2_discretized(P, s, k, h / 2).max_length
    assert coarse >= fine - 1e-9
    assert fine >= compute_r_min(P, s) - 1e-9


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(corpus()), st.integers(1, 2))
def test_refined_grid_never_beats_hanan_grid(inst, k):
    # the refined grid contains the Hanan grid, so it can only tie or win;
    # contacts off the Hanan grid (sampled every 1/8) must never win
    _, P, s = inst
    assert brute_force_l1(P, s, k, pitch=Fraction(1, 8)).max_length == brute_force_l1(P, s, k).max_length
