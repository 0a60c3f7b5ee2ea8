import pytest
from hypothesis import given, settings, strategies as st

from kwatchman import (
    essential_cuts, sees_route_many, solve_exact_l1, touches_all_cuts, validate_polygon, visibility_cuts,
)
from kwatchman.cuts import pocket_contains
from kwatchman.geometry import L2, Point, make_tour

from conftest import LP, SQ, ST, UP, UP_S, corpus, interior_samples


def chords(cs):
    return [c.chord for c in cs]


def test_square_has_no_cuts():
    assert len(visibility_cuts(SQ, (0, 0))) == 0
    assert len(essential_cuts(SQ, (0, 0))) == 0


def test_lp_single_cut():
    assert chords(visibility_cuts(LP, (4, 0))) == [(Point(2, 2), Point(2, 0))]


def test_staircase_cuts_and_domination():
    assert set(chords(visibility_cuts(ST, (6, 0)))) == {(Point(4, 2), Point(4, 0)), (Point(2, 4), Point(2, 0))}
    assert chords(essential_cuts(ST, (6, 0))) == [(Point(2, 4), Point(2, 0))]


def test_up_essential_order():
    assert chords(essential_cuts(UP, UP_S)) == [(Point(4, 2), Point(4, 0)), (Point(2, 2), Point(2, 0))]


def test_touches_all_cuts_examples():
    cuts = essential_cuts(UP, UP_S)
    left = make_tour([UP_S, Point(2, 0), UP_S], L2)
    right = make_tour([UP_S, Point(4, 0), UP_S], L2)
    assert touches_all_cuts(cuts, [left, right])
    assert not touches_all_cuts(cuts, [left])
    assert touches_all_cuts(essential_cuts(SQ, (0, 0)), [left])


@pytest.mark.parametrize("name,P,s", corpus()[:20])
def test_essential_cuts_are_unnested_visibility_cuts(name, P, s):
    every = set(chords(visibility_cuts(P, s)))
    ess = essential_cuts(P, s)
    assert all(c.chord in every for c in ess)
    for a in ess:
        for b in ess:
            if a is not b:
                assert not pocket_contains(a, b, P.n)
    ranks = [c.boundary_rank for c in ess]
    assert ranks == sorted(ranks) and len(set(ranks)) == len(ranks)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(corpus()[:20]), st.integers(0, 11))
def test_order_ignores_vertex_rotation(inst, r):
    _, P, s = inst
    r %= P.n
    Q = validate_polygon(P.vertices[r:] + P.vertices[:r])
    assert chords(essential_cuts(Q, s)) == chords(essential_cuts(P, s))


@pytest.mark.parametrize("name,P,s", corpus()[:12])
def test_touching_cuts_matches_sampled_coverage(name, P, s):
    sol = solve_exact_l1(P, s, 2)
    cuts = essential_cuts(P, s)
    pts = interior_samples(P, 2000, seed=1)
    assert touches_all_cuts(cuts, sol.tours)
    assert sees_route_many(P, pts, sol.tours).all()
    # drop routes one at a time; a missed cut must leave part of its pocket dark
    for drop in range(len(sol.tours)):
        rest = [t for i, t in enumerate(sol.tours) if i != drop]
        missed = [c for c in cuts if not touches_all_cuts([c], rest)]
        if not missed:
            continue
        assert not touches_all_cuts(cuts, rest)
        for c in missed:
            inside = interior_samples(c.pocket, 300, seed=2)
            assert not sees_route_many(P, inside, rest or [make_tour([s], L2)]).all()
