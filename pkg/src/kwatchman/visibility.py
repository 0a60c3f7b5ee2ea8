"""Point and segment visibility inside a simple polygon.

Regions are built exactly: point visibility as a triangle fan from an
angular sweep, weak (segment / route) visibility as the visible cells of the
arrangement of window lines over a triangulation of P.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, cmp_to_key, lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import SegmentOutside
from .geometry import (
    Point, SimplePolygon, Tour, div, lerp, on_segment, orient, require_inside,
    segment_inside, segments_intersect, shoelace, triangulate, as_point,
)


@dataclass(frozen=True)
class Region:
    """Union of interior-disjoint simple polygons."""

    parts: tuple[tuple[Point, ...], ...]

    @cached_property
    def area(self):
        return sum((abs(shoelace(p)) for p in self.parts), 0)

    def contains(self, q) -> bool:
        q = as_point(q)
        for part in self.parts:
            if SimplePolygon(part).contains(q):
                return True
        return False


def _half(d):
    return 0 if (d[1] > 0 or (d[1] == 0 and d[0] > 0)) else 1


def _angle_cmp(d1, d2):
    h1, h2 = _half(d1), _half(d2)
    if h1 != h2:
        return h1 - h2
    c = d1[0] * d2[1] - d1[1] * d2[0]
    return -1 if c > 0 else (1 if c < 0 else 0)


def _directions(q, pts):
    dirs = [(1, 0), (0, 1), (-1, 0), (0, -1)]
    dirs += [(p[0] - q[0], p[1] - q[1]) for p in pts if p != q]
    dirs.sort(key=cmp_to_key(_angle_cmp))
    out = []
    for d in dirs:
        if out and _angle_cmp(out[-1], d) == 0:
            continue
        out.append(d)
    return out


def _ray_line_point(q, d, c, e):
    """Intersection of the ray q + t*d with the supporting line of edge ce."""
    ex, ey = e[0] - c[0], e[1] - c[1]
    den = d[0] * ey - d[1] * ex
    t = div((c[0] - q[0]) * ey - (c[1] - q[1]) * ex, den)
    return Point(q[0] + d[0] * t, q[1] + d[1] * t)


@lru_cache(maxsize=8192)
def visibility_fan(P: SimplePolygon, q: Point) -> tuple[tuple[Point, Point], ...]:
    """Triangles (q, a, b), counterclockwise around q, whose union is V(q).

    Empty pairs are left out; a sector outside P (q on the boundary) shows up
    as a gap in the angular sequence.
    """
    dirs = _directions(q, P.vertices)
    fan = []
    m = len(dirs)
    for k in range(m):
        d1, d2 = dirs[k], dirs[(k + 1) % m]
        n1 = abs(d1[0]) + abs(d1[1])
        n2 = abs(d2[0]) + abs(d2[1])
        mid = (div(d1[0], n1) + div(d2[0], n2), div(d1[1], n1) + div(d2[1], n2))
        best_t, best_e = None, None
        for c, e in P.edges:
            ex, ey = e[0] - c[0], e[1] - c[1]
            den = mid[0] * ey - mid[1] * ex
            if den == 0:
                continue
            wx, wy = c[0] - q[0], c[1] - q[1]
            t = div(wx * ey - wy * ex, den)
            if t <= 0:
                continue
            u = div(wx * mid[1] - wy * mid[0], den)
            if 0 <= u <= 1 and (best_t is None or t < best_t):
                best_t, best_e = t, (c, e)
        if best_t is None:
            continue
        half = div(best_t, 2)
        probe = Point(q[0] + mid[0] * half, q[1] + mid[1] * half)
        if not P.contains(probe):
            continue
        c, e = best_e
        fan.append((_ray_line_point(q, d1, c, e), _ray_line_point(q, d2, c, e)))
    return tuple(fan)


def _same_ray(q, a, b) -> bool:
    return orient(q, a, b) == 0 and (a[0] - q[0]) * (b[0] - q[0]) + (a[1] - q[1]) * (b[1] - q[1]) > 0


def visibility_polygon(P: SimplePolygon, q) -> Region:
    q = require_inside(P, q)
    fan = visibility_fan(P, q)
    n = len(fan)
    gap_after = [not _same_ray(q, fan[i][1], fan[(i + 1) % n][0]) for i in range(n)]
    start = (gap_after.index(True) + 1) % n if any(gap_after) else 0
    ring: list[Point] = []
    for i in range(n):
        k = (start + i) % n
        ring.extend(fan[k])
        if gap_after[k]:
            ring.append(q)
    poly = []
    for p in ring:
        if poly and poly[-1] == p:
            continue
        poly.append(p)
    while len(poly) > 1 and poly[0] == poly[-1]:
        poly.pop()
    return Region((tuple(poly),))


def visible_area(P: SimplePolygon, q):
    """|V(q)| as an exact rational."""
    q = require_inside(P, q)
    return sum((abs(orient(q, a, b)) for a, b in visibility_fan(P, q)), 0) / Fraction(2)


def point_sees_segment(P: SimplePolygon, q, a, b) -> bool:
    """Does q see at least one point of the segment ab (ab inside P)?"""
    if segment_inside(P, q, a) or segment_inside(P, q, b):
        return True
    if a == b:
        return False
    ts = {0, 1}
    for v in P.vertices:
        if v == q:
            continue
        den = (b[0] - a[0]) * (v[1] - q[1]) - (b[1] - a[1]) * (v[0] - q[0])
        if den == 0:
            continue
        t = div((q[0] - a[0]) * (v[1] - q[1]) - (q[1] - a[1]) * (v[0] - q[0]), den)
        if 0 < t < 1:
            ts.add(t)
    ts = sorted(ts)
    for t0, t1 in zip(ts, ts[1:]):
        if segment_inside(P, q, lerp(a, b, div(t0 + t1, 2))):
            return True
        if t1 != 1 and segment_inside(P, q, lerp(a, b, t1)):
            return True
    return False


# ------------------------------------------------------------ weak visibility

def _line_key(p, q):
    a = q[1] - p[1]
    b = p[0] - q[0]
    c = -(a * p[0] + b * p[1])
    lead = a if a != 0 else b
    return (div(a, lead), div(b, lead), div(c, lead))


def _split(poly, line):
    a, b, c = line
    vals = [a * p[0] + b * p[1] + c for p in poly]
    if all(v >= 0 for v in vals) or all(v <= 0 for v in vals):
        return [poly]
    left, right = [], []
    m = len(poly)
    for i in range(m):
        p, fp = poly[i], vals[i]
        q, fq = poly[(i + 1) % m], vals[(i + 1) % m]
        if fp >= 0:
            left.append(p)
        if fp <= 0:
            right.append(p)
        if (fp > 0 and fq < 0) or (fp < 0 and fq > 0):
            x = lerp(p, q, div(fp, fp - fq))
            left.append(x)
            right.append(x)
    return [pc for pc in (left, right) if len(pc) >= 3 and shoelace(pc) != 0]


def _segments_of(tours: Iterable) -> list[tuple[Point, Point]]:
    segs = []
    for t in tours:
        pts = t.points if hasattr(t, "points") else tuple(as_point(p) for p in t)
        if len(pts) == 1:
            segs.append((pts[0], pts[0]))
        for a, b in zip(pts, pts[1:]):
            segs.append((a, b))
    return list(dict.fromkeys(tuple(sorted(s)) for s in segs))


def _window_lines(P: SimplePolygon, segs):
    reflex = P.reflex_vertices
    ends = list(dict.fromkeys(p for s in segs for p in s))
    lines = {}
    for e in ends:
        for v in reflex:
            if v != e:
                lines[_line_key(e, v)] = None
    for i, v in enumerate(reflex):
        for w in reflex[i + 1:]:
            for a, b in segs:
                # line vw must meet the segment for the two shadows to pinch on it
                oa, ob = orient(v, w, a), orient(v, w, b)
                if oa == 0 or ob == 0 or (oa > 0) != (ob > 0):
                    lines[_line_key(v, w)] = None
                    break
    return list(lines)


def _sees_any(P, q, segs, quick) -> bool:
    for p in quick:
        if segment_inside(P, q, p):
            return True
    return any(point_sees_segment(P, q, a, b) for a, b in segs)


def weak_visibility_cells(P: SimplePolygon, segs) -> list[tuple[Point, ...]]:
    """Convex cells of P that see at least one of the given segments."""
    cells = [list(t) for t in triangulate(P).triangle_points()]
    for line in _window_lines(P, segs):
        nxt = []
        for c in cells:
            nxt.extend(_split(c, line))
        cells = nxt
    quick = list(dict.fromkeys(p for s in segs for p in s))
    out = []
    for c in cells:
        m = len(c)
        probe = Point(sum(p[0] for p in c) / Fraction(m), sum(p[1] for p in c) / Fraction(m))
        if _sees_any(P, probe, segs, quick):
            out.append(tuple(c))
    return out


def weak_visibility_polygon(P: SimplePolygon, seg) -> Region:
    a, b = as_point(seg[0]), as_point(seg[1])
    if not segment_inside(P, a, b):
        raise SegmentOutside(f"segment {a}-{b} is not inside the polygon")
    return Region(tuple(weak_visibility_cells(P, [(a, b)])))


def route_visible_region(P: SimplePolygon, tours: Sequence) -> Region:
    segs = _segments_of(tours)
    if not segs:
        return Region(())
    return Region(tuple(weak_visibility_cells(P, segs)))


def route_visible_area(P: SimplePolygon, tours: Sequence):
    """Exact area of the union of the visibility regions of all tours."""
    return route_visible_region(P, tours).area


def sees_route(P: SimplePolygon, q, tours: Sequence) -> bool:
    q = require_inside(P, q)
    segs = _segments_of(tours)
    quick = list(dict.fromkeys(p for s in segs for p in s))
    return _sees_any(P, q, segs, quick)


def sees_route_many(P: SimplePolygon, pts: np.ndarray, tours: Sequence) -> np.ndarray:
    """Vectorised sees_route for points strictly inside P.

    Each point is first tested against the tour vertices with float
    orientation tests (edges through the target vertex are skipped, which is
    valid because the query point is interior).  Points that are ambiguous or
    see no vertex fall back to the exact test.
    """
    segs = _segments_of(tours)
    targets = list(dict.fromkeys(p for s in segs for p in s))
    pts = np.asarray(pts, dtype=float).reshape(-1, 2)
    E = P.float_edges
    scale = P.diameter ** 2
    seen = np.zeros(len(pts), dtype=bool)
    unsure = np.zeros(len(pts), dtype=bool)
    qx, qy = pts[:, 0:1], pts[:, 1:2]
    for t in targets:
        keep = np.array([not on_segment(t, a, b) for a, b in P.edges])
        if not keep.any():
            continue
        cx, cy, dx, dy = (E[keep, k][None, :] for k in range(4))
        tx, ty = float(t[0]), float(t[1])
        o1 = (dx - cx) * (qy - cy) - (dy - cy) * (qx - cx)
        o2 = (dx - cx) * (ty - cy) - (dy - cy) * (tx - cx)
        o3 = (tx - qx) * (cy - qy) - (ty - qy) * (cx - qx)
        o4 = (tx - qx) * (dy - qy) - (ty - qy) * (dx - qx)
        tol = 1e-9 * scale
        amb = (np.abs(o1) <= tol) | (np.abs(o2) <= tol) | (np.abs(o3) <= tol) | (np.abs(o4) <= tol)
        cross = ~amb & (o1 * o2 < 0) & (o3 * o4 < 0)
        clear = ~amb & ~cross
        ok = clear.all(axis=1)
        seen |= ok
        unsure |= ~ok & ~cross.any(axis=1)
    for i in np.nonzero(~seen)[0]:
        q = Point(Fraction(pts[i, 0]), Fraction(pts[i, 1]))
        seen[i] = _sees_any(P, q, segs, targets)
    return seen
