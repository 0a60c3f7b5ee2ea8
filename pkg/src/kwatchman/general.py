"""Watchman routes in general simple polygons under the Euclidean metric.

Two solvers live here: a radius-doubling FPTAS for fixed k built on the
ordered-cut DP, and a (2+eps) approximation that tours all cuts inside a
geodesic disk and then cuts the tour into k equal pieces.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

import numpy as np

from .cuts import Cut, CutSequence, essential_cuts, touches_all_cuts
from .dp import DEFAULT_MAX_STATES, BucketScheme, KSolution, _rotations, ordered_cut_dp
from .errors import Infeasible
from .geometry import (
    L2, Point, SimplePolygon, Tour, as_number, dist2, geodesic_distance_matrix,
    geodesic_distance_to_segment, geodesic_path, lerp, line_intersection, make_tour,
    on_segment, require_inside,
)

CUT_SAMPLES = 12  # cap on grid candidates per cut (plus structural points)
_TOL = 1e-9


def _rational(x: float) -> Fraction:
    return Fraction(x).limit_denominator(1 << 20)


def compute_r_min(P: SimplePolygon, s) -> float:
    """Largest geodesic distance from s to an essential cut."""
    s = require_inside(P, s, "anchor")
    cuts = essential_cuts(P, s)
    return max((geodesic_distance_to_segment(P, s, c.chord)[0] for c in cuts), default=0.0)


def _distances_from(P, s, pts) -> np.ndarray:
    return geodesic_distance_matrix(P, [s], list(pts))[0]


def _chord_param(c: Cut, p) -> Fraction:
    a, b = c.chord
    if a.x != b.x:
        return Fraction(p[0] - a.x) / (b.x - a.x)
    return Fraction(p[1] - a.y) / (b.y - a.y)


def _clip_params(P, s, c: Cut, r, iters=48):
    a, b = c.chord
    d0, foot = geodesic_distance_to_segment(P, s, c.chord)
    tol = 1e-12 * max(1.0, r)
    if d0 > r + _TOL * max(1.0, r):
        return None
    t_star = _chord_param(c, foot)

    def ok(t):
        return _distances_from(P, s, [lerp(a, b, t)])[0] <= r + tol

    def reach(lo, hi):
        # lo is feasible; find the last feasible parameter between lo and hi
        if ok(hi):
            return hi
        for _ in range(iters):
            mid = (lo + hi) / 2
            if ok(mid):
                lo = mid
            else:
                hi = mid
            if abs(hi - lo) <= 1e-9:
                break
        return lo

    def snap(t):
        # a sliver this thin is float noise around a tangency at t_star
        return t_star if abs(t - t_star) * c.length <= 1e-5 * max(1.0, r) else t

    return snap(reach(t_star, Fraction(0))), snap(reach(t_star, Fraction(1))), t_star


def clip_cut_to_disk(P: SimplePolygon, s, c: Cut, r):
    """Part of the cut's chord within geodesic distance r of s, or None."""
    s = require_inside(P, s, "anchor")
    got = _clip_params(P, s, c, float(r))
    if got is None:
        return None
    t0, t1, _ = got
    a, b = c.chord
    return lerp(a, b, t0), lerp(a, b, t1)


@dataclass(frozen=True)
class DiskSpec:
    s: Point
    r: float
    clipped_cuts: tuple


@dataclass
class CandidateSet:
    s: Point
    points: list
    groups: list  # per cut: indices into points
    dist: np.ndarray = field(repr=False)  # all-pairs geodesic distances
    delta: Fraction = Fraction(0)

    def key(self):
        return tuple(tuple(self.points[i] for i in g) for g in self.groups)


def _grid_params(c: Cut, s, delta, t0, t1):
    a, b = c.chord
    out = set()
    if not delta:
        return out
    for axis in (0, 1):
        span = b[axis] - a[axis]
        if span == 0:
            continue
        lo, hi = sorted((a[axis] + span * t0, a[axis] + span * t1))
        i0 = math.ceil((lo - s[axis]) / delta)
        i1 = math.floor((hi - s[axis]) / delta)
        for i in range(i0, i1 + 1):
            out.add((s[axis] + i * delta - a[axis]) / span)
    return out


def _thin(params: list, cap: int) -> list:
    if len(params) <= cap:
        return params
    idx = np.linspace(0, len(params) - 1, cap).round().astype(int)
    return [params[i] for i in sorted(set(idx.tolist()))]


def candidate_set(P: SimplePolygon, s, cuts: CutSequence, r, delta, per_cut: int = CUT_SAMPLES):
    """Candidate contact points on the essential cuts clipped to GD_s(r)."""
    s = require_inside(P, s, "anchor")
    delta = _rational(delta) if delta else Fraction(0)
    pts: dict[Point, int] = {s: 0}
    groups = []
    for c in cuts:
        got = _clip_params(P, s, c, float(r))
        if got is None:
            return None
        t0, t1, t_star = got
        a, b = c.chord
        special = {t0, t1, t_star}
        for d in cuts:
            if d is c:
                continue
            t = line_intersection(a, b, *d.chord)
            if t is not None and 0 <= t <= 1 and on_segment(lerp(a, b, t), *d.chord) and t0 <= t <= t1:
                special.add(t)
        grid = sorted(t for t in _grid_params(c, s, delta, t0, t1) if t0 < t < t1 and t not in special)
        params = sorted(special | set(_thin(grid, per_cut)))
        g = []
        for t in params:
            p = lerp(a, b, t)
            if p not in pts:
                pts[p] = len(pts)
            g.append(pts[p])
        groups.append(list(dict.fromkeys(g)))
    plist = list(pts)
    return CandidateSet(s, plist, groups, pairwise_distances(P, plist), delta)


def pairwise_distances(P: SimplePolygon, pts: list) -> np.ndarray:
    """Symmetric geodesic distance table, memoised per polygon across calls."""
    memo = P.__dict__.setdefault("_pair_memo", {})
    fresh = [p for p in pts if p not in memo]
    if fresh:
        known = list(memo)
        for p in fresh:
            memo[p] = {}
        full = known + fresh
        block = geodesic_distance_matrix(P, fresh, full)
        for i, p in enumerate(fresh):
            for q, d in zip(full, block[i].tolist()):
                memo[p][q] = min(memo[p].get(q, math.inf), d)
                memo[q][p] = min(memo[q].get(p, math.inf), d)
    return np.array([[memo[p][q] for q in pts] for p in pts])


def _closed_tours(P, cand: CandidateSet, res, order):
    tours, assign = [], []
    for route in res.routes:
        pts = [cand.s]
        cur = cand.s
        for v, j in route:
            q = cand.points[v]
            pts.extend(geodesic_path(P, cur, q).points[1:])
            cur = q
        pts.extend(geodesic_path(P, cur, cand.s).points[1:])
        tours.append(make_tour(pts, L2))
        assign.append(tuple(sorted(order[j] for _, j in route)))
    idx = sorted(range(len(tours)), key=lambda i: (assign[i], tours[i].points))
    return tuple(tours[i] for i in idx), tuple(assign[i] for i in idx)


def _run_dp(P, cand: CandidateSet, cuts: CutSequence, k, quantize, cap, max_states):
    m = len(cuts)
    best = None
    for order in _rotations(m, cuts.s_on_boundary):
        groups = [cand.groups[i] for i in order]
        D = cand.dist

        def moves(j, u, groups=groups):
            return [(v, float(D[u, v])) for v in groups[j]]

        res = ordered_cut_dp(k, m, 0, moves, lambda u: float(D[u, 0]), quantize, cap, max_states)
        if res is not None and (best is None or res.value < best[0].value):
            best = (res, order)
    return best


def _degenerate(s, k, metric=L2, **cert) -> KSolution:
    tours = tuple(Tour((s, s), metric) for _ in range(k))
    return KSolution(tours, 0.0 if metric == L2 else 0, tuple(() for _ in range(k)), metric,
                     {"cuts_covered": True, **cert})


def _single_route_length(P, s, cuts, r_min, eps, max_states):
    """Seed length for the bucket scheme: a near-shortest single route."""
    n = P.n
    r_big = 6 * n * r_min
    delta = eps * 2 * r_min / (8 * n)
    cand = candidate_set(P, s, cuts, r_big, delta)
    res, _ = _run_dp(P, cand, cuts, 1, lambda x: x, None, max_states)
    return res.value


def solve_fptas_l2(P: SimplePolygon, s, k: int, eps, *, max_states: int = DEFAULT_MAX_STATES,
                   per_cut: int = CUT_SAMPLES) -> KSolution:
    s = require_inside(P, s, "anchor")
    eps = float(as_number(eps))
    if k < 1 or eps <= 0:
        raise ValueError("need k >= 1 and epsilon > 0")
    cuts = essential_cuts(P, s)
    n = P.n
    if not cuts:
        return _degenerate(s, k, mode="fptas-l2", r_min=0.0)
    r_min = compute_r_min(P, s)
    L = _single_route_length(P, s, cuts, r_min, eps, max_states)
    scheme = BucketScheme.build(L, n, k, Fraction(eps).limit_denominator(1 << 20))
    width = float(scheme.width)
    quantize = (lambda x: math.floor(x / width)) if width else (lambda x: 0)
    delta = eps * L / (8 * n * k)
    cap = L * (1 + eps) + 1e-9
    best, radii, seen = None, [], set()
    r = r_min
    while r <= 6 * n * r_min * (1 + 1e-12):
        cand = candidate_set(P, s, cuts, r, delta, per_cut)
        if cand is not None and cand.key() not in seen:
            seen.add(cand.key())
            got = _run_dp(P, cand, cuts, k, quantize, cap, max_states)
            if got is not None:
                res, order = got
                radii.append(r)
                if best is None or res.value < best[0].value - 1e-12:
                    best = (res, order, cand, r)
        r *= 2
    if best is None:
        raise Infeasible("no radius produced a covering collection")
    res, order, cand, r_acc = best
    tours, assign = _closed_tours(P, cand, res, order)
    max_len = max(t.length for t in tours)
    cert = dict(
        mode="fptas-l2", epsilon=eps, r_min=r_min, r_accepted=r_acc, radii=radii,
        upper_radius=6 * n * r_min, L=L, lower_bound=L / k, upper_bound=L,
        buckets=scheme.count, delta=float(cand.delta), cuts_covered=touches_all_cuts(cuts, tours),
    )
    return KSolution(tours, max_len, assign, L2, cert)


# ------------------------------------------------------------- variable k

def tour_cuts_within_disk(P: SimplePolygon, s, r, eps, *, max_states: int = DEFAULT_MAX_STATES,
                          per_cut: int = CUT_SAMPLES) -> Tour:
    """Short closed tour from s touching every essential cut inside GD_s(r)."""
    s = require_inside(P, s, "anchor")
    cuts = essential_cuts(P, s)
    if not cuts:
        return Tour((s, s), L2)
    r = float(r)
    r_min = compute_r_min(P, s)
    delta = float(as_number(eps)) * 2 * r_min / (8 * P.n)
    cand = candidate_set(P, s, cuts, r, delta, per_cut)
    if cand is None:
        raise Infeasible(f"radius {r:g} misses at least one essential cut")
    res, order = _run_dp(P, cand, cuts, 1, lambda x: x, None, max_states)
    tours, _ = _closed_tours(P, cand, res, order)
    return tours[0]


def _point_at(pts, cum, target):
    i = int(np.searchsorted(cum, target, side="right")) - 1
    i = min(max(i, 0), len(pts) - 2)
    seg = cum[i + 1] - cum[i]
    t = 0.0 if seg == 0 else min(max((target - cum[i]) / seg, 0.0), 1.0)
    if t <= 1e-12:
        return i, pts[i]
    if t >= 1 - 1e-12:
        return i, pts[i + 1]
    return i, lerp(pts[i], pts[i + 1], _rational(t))


def split_and_close(P: SimplePolygon, s, gamma: Tour, k: int) -> tuple[Tour, ...]:
    """Cut gamma into k pieces of equal length and close each through s."""
    s = require_inside(P, s, "anchor")
    pts = list(gamma.points)
    if k == 1:
        return (gamma,)
    if len(pts) < 2 or gamma.length == 0:
        return tuple(Tour((s, s), gamma.metric) for _ in range(k))
    seg = [dist2(a, b) for a, b in zip(pts, pts[1:])]
    cum = np.concatenate([[0.0], np.cumsum(seg)])
    total = cum[-1]
    cuts = [(0, pts[0])] + [_point_at(pts, cum, total * i / k) for i in range(1, k)] + [(len(pts) - 2, pts[-1])]
    out = []
    for (i0, a), (i1, b) in zip(cuts, cuts[1:]):
        body = [a] + pts[i0 + 1:i1 + 1] + [b]
        chain = list(geodesic_path(P, s, a).points) + body[1:] + list(geodesic_path(P, b, s).points[1:])
        out.append(make_tour(chain, gamma.metric))
    return tuple(out)


def solve_variable_k(P: SimplePolygon, s, k: int, eps, *, max_states: int = DEFAULT_MAX_STATES,
                     per_cut: int = CUT_SAMPLES) -> KSolution:
    s = require_inside(P, s, "anchor")
    eps = float(as_number(eps))
    if k < 1 or eps <= 0:
        raise ValueError("need k >= 1 and epsilon > 0")
    cuts = essential_cuts(P, s)
    if not cuts:
        return _degenerate(s, k, mode="approx", r_min=0.0)
    n = P.n
    r_min = compute_r_min(P, s)
    eps_r = eps_t = eps / 2
    best, seen, r = None, {}, r_min
    while r <= 6 * n * r_min * (1 + 1e-12):
        cand = candidate_set(P, s, cuts, r, eps_t * 2 * r_min / (8 * n), per_cut)
        if cand is not None:
            key = cand.key()
            if key not in seen:
                res, order = _run_dp(P, cand, cuts, 1, lambda x: x, None, max_states)
                gamma = _closed_tours(P, cand, res, order)[0][0]
                pieces = split_and_close(P, s, gamma, k)
                seen[key] = (gamma, pieces)
                value = max(t.length for t in pieces)
                if best is None or value < best[0] - 1e-12:
                    best = (value, gamma, pieces, r)
        r *= 1 + eps_r
    value, gamma, pieces, r_acc = best
    cert = dict(
        mode="approx", epsilon=eps, eps_r=eps_r, eps_t=eps_t, r_min=r_min, r_accepted=r_acc,
        gamma_length=gamma.length, upper_radius=6 * n * r_min,
        piece_bound=gamma.length / k + 2 * (1 + eps_r) * r_acc,
        cuts_covered=touches_all_cuts(cuts, pieces),
    )
    return KSolution(tuple(pieces), value, tuple(() for _ in pieces), L2, cert)
