"""Exact planar geometry on simple polygons.

Coordinates are Python ints or ``Fraction`` objects, so orientation and
containment tests never round.  Euclidean lengths are floats.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import InvalidPolygon, PointOutside

L1 = "l1"
L2 = "l2"


def as_number(v):
    """Convert int / Fraction / float / decimal string / [num, den] to an exact number."""
    if isinstance(v, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(v, int):
        return v
    if isinstance(v, Fraction):
        f = v
    elif isinstance(v, float):
        if not math.isfinite(v):
            raise InvalidPolygon(f"non-finite coordinate {v!r}")
        f = Fraction(v)
    elif isinstance(v, str):
        f = Fraction(v.strip())
    elif isinstance(v, (list, tuple)) and len(v) == 2:
        f = Fraction(as_number(v[0]), as_number(v[1]))
    else:
        raise TypeError(f"cannot interpret {v!r} as a coordinate")
    return f.numerator if f.denominator == 1 else f


def div(a, b):
    f = Fraction(a, b)
    return f.numerator if f.denominator == 1 else f


class Point(NamedTuple):
    x: int | Fraction
    y: int | Fraction

    def __repr__(self):
        return f"({_fmt(self.x)}, {_fmt(self.y)})"


def _fmt(v):
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    return str(v)


def point(x, y) -> Point:
    return Point(as_number(x), as_number(y))


def as_point(p) -> Point:
    if isinstance(p, Point):
        return p
    return point(p[0], p[1])


def orient(a, b, c):
    """Twice the signed area of triangle abc (>0 for a left turn)."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def on_segment(p, a, b) -> bool:
    if orient(a, b, p) != 0:
        return False
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def segments_intersect(a, b, c, d) -> bool:
    """Closed segment intersection test (touching counts)."""
    d1 = orient(c, d, a)
    d2 = orient(c, d, b)
    d3 = orient(a, b, c)
    d4 = orient(a, b, d)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and ((d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)):
        return True
    return (on_segment(a, c, d) or on_segment(b, c, d)
            or on_segment(c, a, b) or on_segment(d, a, b))


def _norm(v):
    return v.numerator if isinstance(v, Fraction) and v.denominator == 1 else v


def lerp(a, b, t) -> Point:
    return Point(_norm(a[0] + (b[0] - a[0]) * t), _norm(a[1] + (b[1] - a[1]) * t))


def line_intersection(a, b, c, d):
    """Parameter t along ab where line ab meets line cd, or None if parallel."""
    den = (b[0] - a[0]) * (d[1] - c[1]) - (b[1] - a[1]) * (d[0] - c[0])
    if den == 0:
        return None
    return div((c[0] - a[0]) * (d[1] - c[1]) - (c[1] - a[1]) * (d[0] - c[0]), den)


def dist2(a, b) -> float:
    return math.hypot(float(a[0]) - float(b[0]), float(a[1]) - float(b[1]))


def dist1(a, b):
    return abs(a[0] - b[0]) + abs(a[1] - b[1])


def shoelace(pts: Sequence) -> int | Fraction:
    """Signed area (positive for counterclockwise)."""
    s = 0
    n = len(pts)
    for i in range(n):
        a, b = pts[i], pts[(i + 1) % n]
        s += a[0] * b[1] - a[1] * b[0]
    return div(s, 2)


@dataclass(frozen=True)
class SimplePolygon:
    """Counterclockwise simple polygon; build through :func:`validate_polygon`."""

    vertices: tuple[Point, ...]

    @property
    def n(self) -> int:
        return len(self.vertices)

    @cached_property
    def edges(self) -> tuple[tuple[Point, Point], ...]:
        v = self.vertices
        return tuple((v[i], v[(i + 1) % len(v)]) for i in range(len(v)))

    @cached_property
    def reflex(self) -> tuple[bool, ...]:
        v = self.vertices
        n = len(v)
        return tuple(orient(v[i - 1], v[i], v[(i + 1) % n]) < 0 for i in range(n))

    @cached_property
    def reflex_vertices(self) -> tuple[Point, ...]:
        return tuple(p for p, r in zip(self.vertices, self.reflex) if r)

    @cached_property
    def area(self):
        return shoelace(self.vertices)

    @cached_property
    def bbox(self):
        xs = [p.x for p in self.vertices]
        ys = [p.y for p in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)

    @cached_property
    def diameter(self) -> float:
        x0, y0, x1, y1 = self.bbox
        return math.hypot(float(x1 - x0), float(y1 - y0))

    @cached_property
    def perimeter(self) -> float:
        return sum(dist2(a, b) for a, b in self.edges)

    @cached_property
    def is_orthogonal(self) -> bool:
        return all(a.x == b.x or a.y == b.y for a, b in self.edges)

    @cached_property
    def float_edges(self) -> np.ndarray:
        return np.array([[float(a.x), float(a.y), float(b.x), float(b.y)] for a, b in self.edges])

    def on_boundary(self, p) -> bool:
        return any(on_segment(p, a, b) for a, b in self.edges)

    def contains(self, p) -> bool:
        """Closed containment: boundary points are inside."""
        inside = False
        y = p[1]
        for a, b in self.edges:
            if on_segment(p, a, b):
                return True
            if a.y <= y < b.y:
                if orient(a, b, p) > 0:
                    inside = not inside
            elif b.y <= y < a.y:
                if orient(a, b, p) < 0:
                    inside = not inside
        return inside

    def contains_strictly(self, p) -> bool:
        return self.contains(p) and not self.on_boundary(p)

    def boundary_param(self, p):
        """Position of a boundary point as ``edge index + fraction``, or None."""
        for i, (a, b) in enumerate(self.edges):
            if on_segment(p, a, b):
                if p == a:
                    return i
                if a.x != b.x:
                    return i + div(p[0] - a.x, b.x - a.x)
                return i + div(p[1] - a.y, b.y - a.y)
        return None

    def point_at_param(self, t) -> Point:
        i = math.floor(t) % self.n
        a, b = self.edges[i]
        return lerp(a, b, t - math.floor(t))


def validate_polygon(raw_vertices: Iterable) -> SimplePolygon:
    pts = [as_point(p) for p in raw_vertices]
    n = len(pts)
    if n < 3:
        raise InvalidPolygon("a polygon needs at least 3 vertices")
    if len(set(pts)) != n:
        raise InvalidPolygon("repeated vertex")
    area = shoelace(pts)
    if area == 0:
        raise InvalidPolygon("zero area")
    edges = [(pts[i], pts[(i + 1) % n]) for i in range(n)]
    for i in range(n):
        a, b = edges[i]
        c, d = edges[(i + 1) % n]
        # consecutive edges may be collinear only when continuing forward
        if orient(a, b, d) == 0 and (d[0] - b[0]) * (b[0] - a[0]) + (d[1] - b[1]) * (b[1] - a[1]) < 0:
            raise InvalidPolygon(f"edges fold back at vertex {b}")
    for i in range(n):
        for j in range(i + 2, n):
            if i == 0 and j == n - 1:
                continue
            if segments_intersect(*edges[i], *edges[j]):
                raise InvalidPolygon(f"self-intersection between edges {i} and {j}")
    if area < 0:
        pts.reverse()
    return SimplePolygon(tuple(pts))


def require_inside(P: SimplePolygon, p, what="point"):
    p = as_point(p)
    if not P.contains(p):
        raise PointOutside(f"{what} {p} is outside the polygon")
    return p


def segment_inside(P: SimplePolygon, a, b) -> bool:
    """True iff the closed segment ab lies in the closed polygon."""
    if a == b:
        return P.contains(a)
    ts = {0, 1}
    for c, d in P.edges:
        o1 = orient(c, d, a)
        o2 = orient(c, d, b)
        if (o1 > 0 and o2 > 0) or (o1 < 0 and o2 < 0):
            continue
        o3 = orient(a, b, c)
        o4 = orient(a, b, d)
        if (o3 > 0 and o4 > 0) or (o3 < 0 and o4 < 0):
            continue
        if o1 == 0 and o2 == 0:
            # collinear; record where the edge endpoints fall on ab
            k = 0 if a[0] != b[0] else 1
            for e in (c, d):
                t = div(e[k] - a[k], b[k] - a[k])
                if 0 < t < 1:
                    ts.add(t)
            continue
        if o1 != 0 and o2 != 0 and o3 != 0 and o4 != 0:
            return False  # proper crossing
        t = div(o1, o1 - o2) if o1 != o2 else None
        if t is not None and 0 < t < 1:
            ts.add(t)
    if not (P.contains(a) and P.contains(b)):
        return False
    ts = sorted(ts)
    for t0, t1 in zip(ts, ts[1:]):
        if not P.contains(lerp(a, b, div(t0 + t1, 2))):
            return False
    return True


def ray_hit(P: SimplePolygon, origin, direction):
    """First boundary point hit by the open ray origin + t*direction, t > 0."""
    best_t = None
    best_i = None
    ox, oy = origin
    dx, dy = direction
    for i, (c, d) in enumerate(P.edges):
        ex, ey = d[0] - c[0], d[1] - c[1]
        den = dx * ey - dy * ex
        wx, wy = c[0] - ox, c[1] - oy
        if den == 0:
            if wx * dy - wy * dx != 0:
                continue
            # collinear edge: nearest endpoint ahead of the origin
            for e in (c, d):
                t = div((e[0] - ox) * dx + (e[1] - oy) * dy, dx * dx + dy * dy)
                if t > 0 and (best_t is None or t < best_t):
                    best_t, best_i = t, i
            continue
        t = div(wx * ey - wy * ex, den)
        u = div(wx * dy - wy * dx, den)
        if t > 0 and 0 <= u <= 1 and (best_t is None or t < best_t):
            best_t, best_i = t, i
    if best_t is None:
        return None, None
    return Point(_norm(ox + dx * best_t), _norm(oy + dy * best_t)), best_i


@dataclass(frozen=True)
class Path:
    points: tuple[Point, ...]
    metric: str = L2

    @cached_property
    def length(self):
        f = dist1 if self.metric == L1 else dist2
        return sum((f(a, b) for a, b in zip(self.points, self.points[1:])), 0 if self.metric == L1 else 0.0)

    def segments(self):
        pts = self.points
        if len(pts) == 1:
            return [(pts[0], pts[0])]
        return [(a, b) for a, b in zip(pts, pts[1:]) if a != b] or [(pts[0], pts[0])]

    def with_metric(self, metric: str) -> "Path":
        return type(self)(self.points, metric)


@dataclass(frozen=True)
class Tour(Path):
    """Closed route; first and last points are the anchor."""

    @property
    def anchor(self) -> Point:
        return self.points[0]

    @property
    def is_closed(self) -> bool:
        return self.points[0] == self.points[-1]


def simplify_chain(pts: Sequence[Point]) -> list[Point]:
    """Drop repeated points and interior vertices where the chain runs straight on."""
    out: list[Point] = []
    for p in pts:
        if out and out[-1] == p:
            continue
        while len(out) >= 2 and orient(out[-2], out[-1], p) == 0 and (
                (out[-1][0] - out[-2][0]) * (p[0] - out[-1][0]) + (out[-1][1] - out[-2][1]) * (p[1] - out[-1][1]) > 0):
            out.pop()
        out.append(p)
    return out


def make_tour(pts: Sequence[Point], metric: str) -> Tour:
    pts = list(pts)
    anchor = pts[0]
    body = simplify_chain(pts)
    if body[-1] != anchor:
        body.append(anchor)
    if len(body) == 1:
        body = [anchor, anchor]
    return Tour(tuple(body), metric)


def polygon_area(P: SimplePolygon):
    return P.area


# ---------------------------------------------------------------- triangulation

@dataclass(frozen=True)
class Triangulation:
    vertices: tuple[Point, ...]
    triangles: tuple[tuple[int, int, int], ...]

    @cached_property
    def chords(self) -> tuple[tuple[Point, Point], ...]:
        """Triangle edges that are not polygon boundary edges."""
        count: dict[tuple[int, int], int] = {}
        for tri in self.triangles:
            for i in range(3):
                e = tuple(sorted((tri[i], tri[(i + 1) % 3])))
                count[e] = count.get(e, 0) + 1
        v = self.vertices
        return tuple((v[a], v[b]) for (a, b), c in sorted(count.items()) if c == 2)

    def triangle_points(self):
        v = self.vertices
        return [(v[a], v[b], v[c]) for a, b, c in self.triangles]


def _ear_clip(pts: Sequence[Point]) -> list[tuple[int, int, int]]:
    idx = list(range(len(pts)))
    tris = []
    while len(idx) > 3:
        m = len(idx)
        for k in range(m):
            i0, i1, i2 = idx[k - 1], idx[k], idx[(k + 1) % m]
            a, b, c = pts[i0], pts[i1], pts[i2]
            if orient(a, b, c) <= 0:
                continue
            ok = True
            for j in idx:
                if j in (i0, i1, i2):
                    continue
                p = pts[j]
                if orient(a, b, p) >= 0 and orient(b, c, p) >= 0 and orient(c, a, p) >= 0:
                    ok = False
                    break
            if ok:
                tris.append((i0, i1, i2))
                idx.pop(k)
                break
        else:
            raise InvalidPolygon("ear clipping found no ear; polygon is degenerate")
    if orient(*(pts[i] for i in idx)) == 0:
        raise InvalidPolygon("ear clipping left a degenerate triangle")
    tris.append(tuple(idx))
    return tris


def triangulate(P: SimplePolygon, s=None) -> Triangulation:
    """Ear-clipping triangulation, optionally with the anchor s as a vertex."""
    verts = list(P.vertices)
    if s is None:
        return Triangulation(tuple(verts), tuple(_ear_clip(verts)))
    s = require_inside(P, s, "anchor")
    if s in verts:
        return Triangulation(tuple(verts), tuple(_ear_clip(verts)))
    for i, (a, b) in enumerate(P.edges):
        if on_segment(s, a, b):
            verts.insert(i + 1, s)
            return Triangulation(tuple(verts), tuple(_ear_clip(verts)))
    tris = _ear_clip(verts)
    verts.append(s)
    si = len(verts) - 1
    out = []
    for t in tris:
        a, b, c = (verts[i] for i in t)
        o = (orient(a, b, s), orient(b, c, s), orient(c, a, s))
        if min(o) < 0:
            out.append(t)
            continue
        for e in range(3):
            if o[e] != 0:
                out.append((t[e], t[(e + 1) % 3], si))
    return Triangulation(tuple(verts), tuple(out))


# ---------------------------------------------------------------- L2 geodesics

class _VertexGraph:
    """All-pairs geodesic distances between reflex vertices."""

    def __init__(self, P: SimplePolygon):
        self.P = P
        self.nodes = list(P.reflex_vertices)
        m = len(self.nodes)
        self.index = {p: i for i, p in enumerate(self.nodes)}
        self.fnodes = np.array([[float(p.x), float(p.y)] for p in self.nodes]).reshape(m, 2)
        w = np.full((m, m), np.inf)
        for i in range(m):
            w[i, i] = 0.0
            for j in range(i + 1, m):
                if segment_inside(P, self.nodes[i], self.nodes[j]):
                    w[i, j] = w[j, i] = dist2(self.nodes[i], self.nodes[j])
        self.adj = np.isfinite(w)
        d = w.copy()
        nxt = np.tile(np.arange(m), (m, 1))
        for k in range(m):
            via = d[:, k:k + 1] + d[k:k + 1, :]
            better = via < d - 1e-12
            d = np.where(better, via, d)
            nxt = np.where(better, np.tile(nxt[:, k:k + 1], (1, m)), nxt)
        self.dist = d
        self.next = nxt

    def route(self, i, j) -> list[Point]:
        out = [self.nodes[i]]
        while i != j:
            i = int(self.next[i, j])
            out.append(self.nodes[i])
        return out


def _graph(P: SimplePolygon) -> _VertexGraph:
    g = P.__dict__.get("_vgraph")
    if g is None:
        g = _VertexGraph(P)
        P.__dict__["_vgraph"] = g
    return g


@lru_cache(maxsize=4096)
def _visible_nodes(P: SimplePolygon, a: Point) -> tuple[int, ...]:
    g = _graph(P)
    return tuple(i for i, v in enumerate(g.nodes) if segment_inside(P, a, v))


def geodesic_path(P: SimplePolygon, a, b) -> Path:
    """Euclidean shortest path inside P (bends only at reflex vertices)."""
    a = require_inside(P, a)
    b = require_inside(P, b)
    if segment_inside(P, a, b):
        return Path((a, b) if a != b else (a,), L2)
    g = _graph(P)
    va = _visible_nodes(P, a)
    vb = _visible_nodes(P, b)
    best = (math.inf, None, None)
    for i in va:
        da = dist2(a, g.nodes[i])
        for j in vb:
            tot = da + g.dist[i, j] + dist2(g.nodes[j], b)
            if tot < best[0]:
                best = (tot, i, j)
    if best[1] is None:
        raise PointOutside("no geodesic found; points are not connected inside P")
    pts = [a] + g.route(best[1], best[2]) + [b]
    return Path(tuple(simplify_chain(pts)), L2)


def geodesic_distance(P: SimplePolygon, a, b) -> float:
    return geodesic_path(P, a, b).length


def _near_zero(x, scale):
    return np.abs(x) <= 1e-9 * scale


def visibility_matrix(P: SimplePolygon, A: Sequence[Point], B: Sequence[Point]) -> np.ndarray:
    """Boolean matrix of segment_inside(P, A[i], B[j]).

    Float orientation tests settle the clear cases; anything within
    tolerance of a degeneracy is re-checked exactly.
    """
    na, nb = len(A), len(B)
    if na == 0 or nb == 0:
        return np.zeros((na, nb), dtype=bool)
    fa = np.array([[float(p[0]), float(p[1])] for p in A])
    fb = np.array([[float(p[0]), float(p[1])] for p in B])
    E = P.float_edges
    scale = max(P.diameter, 1e-300) ** 2
    ax = fa[:, None, None, 0]
    ay = fa[:, None, None, 1]
    bx = fb[None, :, None, 0]
    by = fb[None, :, None, 1]
    cx, cy, dx, dy = (E[None, None, :, k] for k in range(4))
    o1 = (dx - cx) * (ay - cy) - (dy - cy) * (ax - cx)
    o2 = (dx - cx) * (by - cy) - (dy - cy) * (bx - cx)
    o3 = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    o4 = (bx - ax) * (dy - ay) - (by - ay) * (dx - ax)
    z = _near_zero(o1, scale) | _near_zero(o2, scale) | _near_zero(o3, scale) | _near_zero(o4, scale)
    sep_edge = ((o1 > 0) & (o2 > 0)) | ((o1 < 0) & (o2 < 0))
    sep_seg = ((o3 > 0) & (o4 > 0)) | ((o3 < 0) & (o4 < 0))
    clear = (sep_edge & ~(_near_zero(o1, scale) | _near_zero(o2, scale))) | (
        sep_seg & ~(_near_zero(o3, scale) | _near_zero(o4, scale)))
    # disjoint bounding boxes settle the collinear cases the orientations cannot
    gap = 1e-9 * math.sqrt(scale)
    clear |= (np.minimum(ax, bx) > np.maximum(cx, dx) + gap) | (np.maximum(ax, bx) < np.minimum(cx, dx) - gap)
    clear |= (np.minimum(ay, by) > np.maximum(cy, dy) + gap) | (np.maximum(ay, by) < np.minimum(cy, dy) - gap)
    cross = ~z & ~sep_edge & ~sep_seg
    blocked = cross.any(axis=2)
    unsure = (~(clear | cross)).any(axis=2) & ~blocked
    out = ~blocked & ~unsure
    for i, j in zip(*np.nonzero(unsure)):
        out[i, j] = segment_inside(P, A[i], B[j])
    if out.any():
        # segments touching nothing are inside iff their start point is
        inside_a = np.array([P.contains(p) for p in A])
        out &= inside_a[:, None]
    return out


def geodesic_distance_matrix(P: SimplePolygon, A: Sequence[Point], B: Sequence[Point]) -> np.ndarray:
    g = _graph(P)
    vis = visibility_matrix(P, A, B)
    fa = np.array([[float(p[0]), float(p[1])] for p in A]).reshape(len(A), 2)
    fb = np.array([[float(p[0]), float(p[1])] for p in B]).reshape(len(B), 2)
    direct = np.linalg.norm(fa[:, None, :] - fb[None, :, :], axis=2)
    out = np.where(vis, direct, np.inf)
    m = len(g.nodes)
    if m and not vis.all():
        va = visibility_matrix(P, A, g.nodes)
        vb = visibility_matrix(P, B, g.nodes)
        la = np.where(va, np.linalg.norm(fa[:, None, :] - g.fnodes[None], axis=2), np.inf)
        lb = np.where(vb, np.linalg.norm(fb[:, None, :] - g.fnodes[None], axis=2), np.inf)
        # through-vertex distance: la[a,u] + D[u,w] + lb[b,w]
        ga = (la[:, :, None] + g.dist[None, :, :]).min(axis=1)
        via = (ga[:, None, :] + lb[None, :, :]).min(axis=2)
        out = np.where(vis, out, via)
    return out


def geodesic_distance_to_segment(P: SimplePolygon, a, seg) -> tuple[float, Point]:
    """Minimum geodesic distance from a to a segment inside P, and a closest point."""
    p, q = seg
    g = _graph(P)
    cands = [p, q]
    if p != q:
        d = (q[0] - p[0], q[1] - p[1])
        dd = d[0] * d[0] + d[1] * d[1]
        for z in [a] + list(g.nodes):
            t = div((z[0] - p[0]) * d[0] + (z[1] - p[1]) * d[1], dd)
            if 0 < t < 1:
                cands.append(lerp(p, q, t))
    cands = list(dict.fromkeys(cands))
    dm = geodesic_distance_matrix(P, [a], cands)[0]
    k = int(np.argmin(dm))
    return float(dm[k]), cands[k]


# ---------------------------------------------------------------- relative hull

def _winding(chain: Sequence[Point], p) -> int:
    w = 0
    for a, b in zip(chain, chain[1:]):
        if a[1] <= p[1] < b[1] and orient(a, b, p) > 0:
            w += 1
        elif b[1] <= p[1] < a[1] and orient(a, b, p) < 0:
            w -= 1
    return w


def _encloses(chain: Sequence[Point], p) -> bool:
    if any(on_segment(p, a, b) for a, b in zip(chain, chain[1:])):
        return True
    return _winding(chain, p) != 0


def convex_hull(pts: Iterable[Point]) -> list[Point]:
    pts = sorted(set(pts))
    if len(pts) <= 2:
        return pts

    def half(seq):
        h: list[Point] = []
        for p in seq:
            while len(h) >= 2 and orient(h[-2], h[-1], p) <= 0:
                h.pop()
            h.append(p)
        return h

    lower = half(pts)
    upper = half(reversed(pts))
    return lower[:-1] + upper[:-1]


def relative_convex_hull(P: SimplePolygon, pts: Iterable) -> Tour:
    """Boundary of the geodesic hull of pts within P, as a closed chain."""
    pts = list(dict.fromkeys(require_inside(P, p) for p in pts))
    if not pts:
        raise ValueError("relative_convex_hull needs at least one point")
    seq = convex_hull(pts)
    if len(seq) == 1:
        return Tour((seq[0], seq[0]), L2)
    paths: dict[tuple[Point, Point], list[Point]] = {}

    def geo(a, b):
        if (a, b) not in paths:
            paths[(a, b)] = list(geodesic_path(P, a, b).points)
        return paths[(a, b)]

    def chain_of(seq):
        out = [seq[0]]
        for i in range(len(seq)):
            out.extend(geo(seq[i], seq[(i + 1) % len(seq)])[1:])
        return out

    for _ in range(len(pts) + 1):
        chain = chain_of(seq)
        outside = [p for p in pts if not _encloses(chain, p)]
        if not outside:
            break
        p = outside[0]
        best = None
        for i in range(len(seq)):
            a, b = seq[i], seq[(i + 1) % len(seq)]
            cost = geodesic_distance(P, a, p) + geodesic_distance(P, p, b) - geodesic_distance(P, a, b)
            if best is None or cost < best[0]:
                best = (cost, i)
        seq.insert(best[1] + 1, p)
    return Tour(tuple(chain_of(seq)), L2)
