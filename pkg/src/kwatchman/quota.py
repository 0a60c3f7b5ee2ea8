"""Quota variant: routes that need only see a prescribed amount of area."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .cuts import _arc, essential_cuts, touches_all_cuts
from .dp import KSolution
from .errors import QuotaOutOfRange
from .general import _degenerate, _rational, compute_r_min, split_and_close, solve_variable_k
from .geometry import (
    L2, Point, SimplePolygon, Tour, _norm, as_number, geodesic_distance_matrix, geodesic_distance_to_segment,
    geodesic_path, lerp, make_tour, orient, ray_hit, require_inside, segment_inside, shoelace,
)
from .visibility import route_visible_area, visibility_polygon, visible_area

AREA_SLACK = 1e-3
_SAMPLES = 32


# ------------------------------------------------------- visible area of GD_s(r)

@dataclass(frozen=True)
class _Cell:
    """Points whose geodesic from s bends last at the reflex vertex u."""

    u: Point
    a: tuple  # unit direction of arrival at u
    b: tuple  # unit direction of the boundary edge closing the wedge
    sigma: int  # rotation sense from a to b
    polygon: tuple

    def direction(self, t: float) -> tuple:
        return ((1 - t) * self.a[0] + t * self.b[0], (1 - t) * self.a[1] + t * self.b[1])

    def area_between(self, t0: float, t1: float):
        if t0 <= 0 and t1 >= 1:
            return abs(shoelace(self.polygon))
        poly = list(self.polygon)
        d0 = tuple(_rational(x) for x in self.direction(t0))
        d1 = tuple(_rational(x) for x in self.direction(t1))
        poly = _clip(poly, self.u, d0, self.sigma)
        poly = _clip(poly, self.u, d1, -self.sigma)
        return abs(shoelace(poly)) if len(poly) >= 3 else 0


def _clip(poly, p, d, sign):
    """Keep the part of poly on the given side of the line p + t d (Sutherland-Hodgman)."""
    def side(x):
        return sign * (d[0] * (x[1] - p[1]) - d[1] * (x[0] - p[0]))

    out = []
    m = len(poly)
    for i in range(m):
        cur, nxt = poly[i], poly[(i + 1) % m]
        fc, fn = side(cur), side(nxt)
        if fc >= 0:
            out.append(cur)
        if (fc > 0 and fn < 0) or (fc < 0 and fn > 0):
            out.append(lerp(cur, nxt, Fraction(fc) / (fc - fn)))
    return out


def _unit(v):
    n = math.hypot(float(v[0]), float(v[1]))
    return (float(v[0]) / n, float(v[1]) / n)


@lru_cache(maxsize=64)
def _cells(P: SimplePolygon, s: Point) -> tuple[_Cell, ...]:
    out = []
    for i, u in enumerate(P.vertices):
        if not P.reflex[i] or u == s:
            continue
        path = geodesic_path(P, s, u).points
        pred = path[-2]
        d_in = (u[0] - pred[0], u[1] - pred[1])
        h, _ = ray_hit(P, u, d_in)
        if h is None or h == u or not segment_inside(P, u, h) or P.on_boundary(lerp(u, h, Fraction(1, 2))):
            continue
        w0, w1 = P.vertices[i - 1], P.vertices[(i + 1) % P.n]
        best = None
        for w in (w0, w1):
            o = orient(pred, u, w)
            if o == 0:
                continue
            sigma = 1 if o > 0 else -1
            e = (w[0] - u[0], w[1] - u[1])
            ang = math.atan2(sigma * (d_in[0] * e[1] - d_in[1] * e[0]), d_in[0] * e[0] + d_in[1] * e[1])
            if best is None or ang < best[0]:
                best = (ang, w, sigma, e)
        if best is None:
            continue
        _, w, sigma, e = best
        hp = P.boundary_param(h)
        side = _arc(P, i, u, hp, h) if w == w1 else _arc(P, hp, h, i, u)
        Q = SimplePolygon(tuple(side))
        cell = visibility_polygon(Q, u).parts[0]
        out.append(_Cell(u, _unit(d_in), _unit(e), sigma, cell))
    return tuple(out)


class _DiskArea:
    """|V(GD_s(r))| as a function of r, with memoised window distances."""

    def __init__(self, P: SimplePolygon, s: Point):
        self.P, self.s = P, s
        self.base = visible_area(P, s)
        self.cells = _cells(P, s)
        self._h: dict = {}

    def h(self, ci: int, t: float) -> float:
        key = (ci, t)
        if key not in self._h:
            c = self.cells[ci]
            d = c.direction(t)
            back = (-_rational(d[0]), -_rational(d[1]))
            z, _ = ray_hit(self.P, c.u, back)
            self._h[key] = geodesic_distance_to_segment(self.P, self.s, (c.u, z))[0] if z else math.inf
        return self._h[key]

    def __call__(self, r: float):
        total = self.base
        tol = 1e-12 * max(1.0, r)
        for ci, cell in enumerate(self.cells):
            ts = [k / _SAMPLES for k in range(_SAMPLES + 1)]
            ok = [self.h(ci, t) <= r + tol for t in ts]
            if all(ok):
                total += cell.area_between(0, 1)
                continue
            # collect maximal feasible intervals, refining ends by bisection
            start = 0.0 if ok[0] else None
            for k in range(1, len(ts)):
                if ok[k] and not ok[k - 1]:
                    start = self._edge(ci, ts[k - 1], ts[k], r + tol)
                elif ok[k - 1] and not ok[k]:
                    end = self._edge(ci, ts[k], ts[k - 1], r + tol)
                    total += cell.area_between(start, end)
                    start = None
            if start is not None:
                total += cell.area_between(start, 1.0)
        return total

    def _edge(self, ci, bad, good, r):
        for _ in range(40):
            mid = (bad + good) / 2
            if self.h(ci, mid) <= r:
                good = mid
            else:
                bad = mid
        return good


@lru_cache(maxsize=64)
def _disk_area(P: SimplePolygon, s: Point) -> _DiskArea:
    return _DiskArea(P, s)


def visible_area_of_disk(P: SimplePolygon, s, r):
    """Area of the points that see some point within geodesic distance r of s."""
    s = require_inside(P, s, "anchor")
    return _disk_area(P, s)(float(r))


def _target_area(P: SimplePolygon, A=None, frac=None):
    if frac is not None:
        A = P.area * Fraction(as_number(frac))
    A = as_number(A)
    if A < 0 or A > P.area:
        raise QuotaOutOfRange(f"quota {A} is outside [0, {P.area}]")
    return A


def r_min_quota(P: SimplePolygon, s, A, rel_tol: float = 1e-7) -> float:
    """Smallest radius whose geodesic disk sees at least A."""
    s = require_inside(P, s, "anchor")
    A = _target_area(P, A)
    f = _disk_area(P, s)
    slack = 1e-9 * float(P.area)
    if float(f.base) >= float(A) - slack:
        return 0.0
    lo, hi = 0.0, compute_r_min(P, s)
    while hi - lo > rel_tol * max(1.0, hi):
        mid = (lo + hi) / 2
        if float(f(mid)) >= float(A) - slack:
            hi = mid
        else:
            lo = mid
    return hi


# ------------------------------------------------------------- budgeted route

GRID_PER_SIDE = 8
_N_SAMPLES = 600


def _inside_many(P: SimplePolygon, pts: np.ndarray) -> np.ndarray:
    E = P.float_edges
    x, y = pts[:, 0:1], pts[:, 1:2]
    cx, cy, dx, dy = (E[None, :, k] for k in range(4))
    up = (cy <= y) & (dy > y)
    down = (dy <= y) & (cy > y)
    cross = (dx - cx) * (y - cy) - (dy - cy) * (x - cx)
    w = np.where(up & (cross > 0), 1, 0) - np.where(down & (cross < 0), 1, 0)
    return w.sum(axis=1) != 0


def _float_sees(P: SimplePolygon, Q: np.ndarray, X: np.ndarray, chunk: int = 256) -> np.ndarray:
    """Approximate visibility between sample points Q and targets X (no proper crossing)."""
    E = P.float_edges
    out = np.zeros((len(Q), len(X)), dtype=bool)
    cx, cy, dx, dy = (E[None, None, :, k] for k in range(4))
    qx, qy = Q[:, None, None, 0], Q[:, None, None, 1]
    for j0 in range(0, len(X), chunk):
        Xc = X[j0:j0 + chunk]
        xx, xy = Xc[None, :, None, 0], Xc[None, :, None, 1]
        o1 = (dx - cx) * (qy - cy) - (dy - cy) * (qx - cx)
        o2 = (dx - cx) * (xy - cy) - (dy - cy) * (xx - cx)
        o3 = (xx - qx) * (cy - qy) - (xy - qy) * (cx - qx)
        o4 = (xx - qx) * (dy - qy) - (xy - qy) * (dx - qx)
        blocked = ((o1 * o2 < 0) & (o3 * o4 < 0)).any(axis=2)
        out[:, j0:j0 + chunk] = ~blocked
    return out


class _Sampler:
    """Weighted sample of P with cached visibility bitsets for routes."""

    def __init__(self, P: SimplePolygon, seed: int = 0, n: int = _N_SAMPLES):
        rng = np.random.default_rng(seed)
        x0, y0, x1, y1 = (float(v) for v in P.bbox)
        side = math.sqrt((x1 - x0) * (y1 - y0) / (n * 1.5))
        gx = np.arange(x0 + side / 2, x1, side)
        gy = np.arange(y0 + side / 2, y1, side)
        g = np.array([(x, y) for x in gx for y in gy])
        g = g + rng.uniform(-side / 2, side / 2, g.shape)
        self.P = P
        self.Q = g[_inside_many(P, g)]
        self.weight = float(P.area) / max(1, len(self.Q))
        self._path_bits: dict = {}

    def bits_of_points(self, pts) -> int:
        X = np.array([[float(p[0]), float(p[1])] for p in pts])
        seen = _float_sees(self.P, self.Q, X).any(axis=1)
        return int("".join("1" if b else "0" for b in seen[::-1]) or "0", 2)

    def path_bits(self, path: tuple) -> int:
        if path not in self._path_bits:
            pts = list(path)
            for a, b in zip(path, path[1:]):
                pts.extend(lerp(a, b, Fraction(i, 4)) for i in (1, 2, 3))
            self._path_bits[path] = self.bits_of_points(pts)
        return self._path_bits[path]


@lru_cache(maxsize=16)
def _sampler(P: SimplePolygon) -> _Sampler:
    return _Sampler(P)


def _budget_candidates(P, s, B, eps, r):
    n = P.n
    delta = max(eps * B / (8 * n), B / GRID_PER_SIDE)
    half = B / 2
    pts = {s}
    if delta > 0:
        steps = int(math.floor(half / delta + 1e-9))
        d = _rational(delta)
        for i in range(-steps, steps + 1):
            for j in range(-steps, steps + 1):
                pts.add(Point(_norm(s[0] + i * d), _norm(s[1] + j * d)))
    pts |= set(P.reflex_vertices)
    for c in essential_cuts(P, s):
        pts.add(geodesic_distance_to_segment(P, s, c.chord)[1])
    pts = [p for p in pts if P.contains(p)]
    d = geodesic_distance_matrix(P, [s], pts)[0]
    keep = [p for p, x in zip(pts, d) if x <= r * (1 + 1e-9) + 1e-12 and x <= B / 2 + 1e-12]
    keep.sort()
    if s in keep:
        keep.remove(s)
    return [s] + keep


def _angular_order(P: SimplePolygon, s, pts):
    """Sort by the direction of the first leg of the geodesic from s (ties: distance)."""
    ref = None
    t = P.boundary_param(s)
    if t is not None:
        a, b = P.edges[int(t) % P.n] if t != int(t) or True else None
        ref = (float(b[0] - a[0]), float(b[1] - a[1]))
    dist = geodesic_distance_matrix(P, [s], pts)[0]
    keyed = []
    for p, dd in zip(pts, dist):
        path = geodesic_path(P, s, p).points
        if len(path) < 2:
            keyed.append((-1.0, 0.0, p))
            continue
        v = (float(path[1][0] - s[0]), float(path[1][1] - s[1]))
        ang = math.atan2(v[1], v[0]) if ref is None else math.atan2(
            ref[0] * v[1] - ref[1] * v[0], ref[0] * v[0] + ref[1] * v[1])
        keyed.append((ang % (2 * math.pi), float(dd), p))
    keyed.sort(key=lambda x: (x[0], x[1]))
    return [p for _, _, p in keyed]


def budgeted_route(P: SimplePolygon, s, B, eps, r=None) -> Tour:
    """Closed tour of length at most (1+eps)B trying to see as much as possible."""
    s = require_inside(P, s, "anchor")
    B, eps = float(B), float(as_number(eps))
    if r is None:
        r = B
    if B <= 0:
        return Tour((s, s), L2)
    n = P.n
    cands = _budget_candidates(P, s, B, eps, float(r))
    order = [s] + _angular_order(P, s, cands[1:])
    C = len(order)
    smp = _sampler(P)
    D = geodesic_distance_matrix(P, order, order)
    D = np.minimum(D, D.T)
    unit = eps * B / (2 * n)
    nb = int(math.floor((1 + eps) * B / unit + 1e-9))
    cost = np.ceil(D / unit - 1e-9).astype(np.int64)

    paths = {}

    def path(i, j):
        if (i, j) not in paths:
            paths[(i, j)] = geodesic_path(P, order[i], order[j]).points
        return paths[(i, j)]

    base = smp.path_bits((s,))
    # state (j, b): best seen-set of a chain s -> ... -> order[j] using b units
    bits: list[dict] = [dict() for _ in range(C)]
    par: list[dict] = [dict() for _ in range(C)]
    for b in range(nb + 1):
        bits[0][b] = base
    for j in range(1, C):
        for i in range(j):
            c = int(cost[i, j])
            if c > nb:
                continue
            seg = smp.path_bits(path(i, j))
            for b0, have in bits[i].items():
                b = b0 + c
                if b > nb:
                    continue
                new = have | seg
                old = bits[j].get(b)
                if old is None or new.bit_count() > old.bit_count():
                    bits[j][b] = new
                    par[j][b] = (i, b0)
    # close each chain with the geodesic back to s within the total allowance
    best = (base.bit_count(), 0, 0, 0.0)
    limit = (1 + eps) * B + 1e-9
    for j in range(1, C):
        for b, have in bits[j].items():
            a = have.bit_count()
            total = b * unit + float(D[j, 0])
            if total <= limit and (a > best[0] or (a == best[0] and total < best[3])):
                best = (a, j, b, total)
    _, j, b, _ = best
    chain = []
    while j > 0:
        chain.append(j)
        j, b = par[j][b]
    chain.reverse()
    pts = [s]
    prev = 0
    for j in chain:
        pts.extend(path(prev, j)[1:])
        prev = j
    pts.extend(path(prev, 0)[1:])
    tour = make_tour(pts, L2)
    if tour.length > limit:  # rounding kept us inside, but stay honest
        tour = Tour((s, s), L2)
    return tour


# ------------------------------------------------------------- k watchmen

def solve_quota_k(P: SimplePolygon, s, k: int, A=None, eps=0.5, *, frac=None) -> KSolution:
    s = require_inside(P, s, "anchor")
    A = _target_area(P, A, frac)
    eps = float(as_number(eps))
    if k < 1 or eps <= 0:
        raise ValueError("need k >= 1 and epsilon > 0")
    need = float(A) * (1 - AREA_SLACK)
    base = visible_area(P, s)
    if base >= A:
        sol = _degenerate(s, k, mode="quota", quota=A, area_seen=base, r_min_quota=0.0,
                          cuts_covered=touches_all_cuts(essential_cuts(P, s), [Tour((s, s), L2)]))
        return sol
    if A >= P.area:
        sol = solve_variable_k(P, s, k, eps)
        cert = dict(sol.certificates, mode="quota", quota=A, area_seen=route_visible_area(P, sol.tours),
                    delegated="full coverage")
        return KSolution(sol.tours, sol.max_length, sol.assignment, sol.metric, cert)
    r0 = r_min_quota(P, s, A)
    n = P.n
    eps_r = eps / 2
    eps_b = math.sqrt(1 + eps / 2) - 1
    U = 6 * n * r0
    count = math.ceil(6 * n / eps_b)
    budgets = [U * i / count for i in range(count + 1)]
    memo: dict = {}

    def probe(b, r):
        key = (round(b, 12), tuple(_budget_candidates(P, s, b, eps_b, r)))
        if key not in memo:
            tour = budgeted_route(P, s, b, eps_b, r)
            memo[key] = (tour, route_visible_area(P, [tour]))
        return memo[key]

    best = None
    r = r0
    while r <= U * (1 + 1e-12):
        lo, hi = 0, count
        if probe(budgets[hi], r)[1] < need:
            r *= 1 + eps_r
            continue
        while lo < hi:
            mid = (lo + hi) // 2
            if probe(budgets[mid], r)[1] >= need:
                hi = mid
            else:
                lo = mid + 1
        gamma, seen = probe(budgets[lo], r)
        pieces = split_and_close(P, s, gamma, k)
        value = max(t.length for t in pieces)
        if best is None or value < best[0] - 1e-12:
            below = probe(budgets[lo - 1], r)[1] if lo else None
            best = (value, gamma, pieces, r, budgets[lo], seen, below)
        r *= 1 + eps_r
    if best is None:
        raise QuotaOutOfRange("no budget on the search grid reached the quota")
    value, gamma, pieces, r_acc, b_acc, gamma_seen, below = best
    seen = route_visible_area(P, pieces)
    cert = dict(
        mode="quota", epsilon=eps, quota=A, area_seen=seen, r_min_quota=r0, r_accepted=r_acc,
        budget=b_acc, budget_area=gamma_seen, previous_budget_area=below, gamma_length=gamma.length, eps_r=eps_r, eps_b=eps_b, upper_radius=U,
        piece_bound=gamma.length / k + 2 * (1 + eps_r) * r_acc,
    )
    return KSolution(tuple(pieces), value, tuple(() for _ in pieces), L2, cert)
