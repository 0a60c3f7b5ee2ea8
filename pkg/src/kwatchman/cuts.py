"""Visibility cuts, pockets and essential cuts with respect to an anchor."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .geometry import (
    Point, SimplePolygon, as_point, dist2, on_segment, ray_hit, require_inside, segments_intersect,
)


@dataclass(frozen=True)
class Cut:
    chord: tuple[Point, Point]  # (reflex vertex, far endpoint on the boundary)
    reflex_index: int
    source_edge: tuple[int, int]
    pocket: SimplePolygon
    pocket_arc: tuple  # boundary parameters (start, end), walked forward
    essential: bool
    boundary_rank: tuple

    @property
    def reflex_vertex(self) -> Point:
        return self.chord[0]

    @property
    def length(self) -> float:
        return dist2(*self.chord)


@dataclass(frozen=True)
class CutSequence:
    cuts: tuple[Cut, ...]
    s: Point
    s_on_boundary: bool

    @property
    def m(self) -> int:
        return len(self.cuts)

    def __len__(self):
        return len(self.cuts)

    def __iter__(self):
        return iter(self.cuts)

    def __getitem__(self, i):
        return self.cuts[i]


def _arc(P: SimplePolygon, start_param, start_pt, end_param, end_pt) -> list[Point]:
    """Boundary chain from start_pt forward to end_pt (both included)."""
    n = P.n
    out = [start_pt]
    i = int(start_param) % n
    j = int(end_param) % n
    # walk vertices strictly after start_param up to end_param
    k = (i + 1) % n
    if end_param < start_param or (end_param == start_param):
        steps = (j - i) % n or n
    else:
        steps = j - i
    for _ in range(steps):
        out.append(P.vertices[k])
        k = (k + 1) % n
    if out[-1] != end_pt:
        out.append(end_pt)
    clean = [out[0]]
    for p in out[1:]:
        if p != clean[-1]:
            clean.append(p)
    return clean


def _rel(t, ref, n):
    return (t - ref) % n


@lru_cache(maxsize=256)
def visibility_cuts(P: SimplePolygon, s) -> tuple[Cut, ...]:
    """All visibility cuts w.r.t. s (one per valid reflex-vertex edge extension)."""
    s = require_inside(P, s, "anchor")
    n = P.n
    v = P.vertices
    s_param = P.boundary_param(s)
    ref = s_param if s_param is not None else 0
    found: dict[frozenset, Cut] = {}
    for i in range(n):
        if not P.reflex[i]:
            continue
        u, x, w = v[i - 1], v[i], v[(i + 1) % n]
        for which, direction in (("prev", (x[0] - u[0], x[1] - u[1])), ("next", (x[0] - w[0], x[1] - w[1]))):
            h, _ = ray_hit(P, x, direction)
            if h is None or h == x:
                continue
            hp = P.boundary_param(h)
            # side A: x forward to h; side B: h forward to x
            side_a = _arc(P, i, x, hp, h)
            side_b = _arc(P, hp, h, i, x)
            # extending the edge into x leaves it straight on side B, so the
            # vertex becomes convex on side A (and vice versa for the next edge)
            keep, pocket_pts, arc = (
                (side_a, side_b, (hp, i)) if which == "prev" else (side_b, side_a, (i, hp)))
            if not SimplePolygon(tuple(keep)).contains(s):
                continue
            chord = (x, h)
            cut = Cut(
                chord=chord,
                reflex_index=i,
                source_edge=((i - 1) % n, i) if which == "prev" else (i, (i + 1) % n),
                pocket=SimplePolygon(tuple(pocket_pts)),
                pocket_arc=arc,
                essential=False,
                boundary_rank=(_rel(i, ref, n), _rel(hp, ref, n)),
            )
            # two reflex vertices can extend onto the same chord from either
            # end; keep the orientation that comes first from s
            key = frozenset(chord)
            if key not in found or cut.boundary_rank < found[key].boundary_rank:
                found[key] = cut
    return tuple(sorted(found.values(), key=lambda c: c.boundary_rank))


def pocket_contains(outer: Cut, inner: Cut, n: int) -> bool:
    """Is inner's pocket a subset of outer's pocket (compared along the boundary)?"""
    a0, a1 = outer.pocket_arc
    b0, b1 = inner.pocket_arc
    span = (a1 - a0) % n or n
    s0 = (b0 - a0) % n
    s1 = span if b1 == a1 else (b1 - a0) % n
    return s0 <= s1 <= span


@lru_cache(maxsize=256)
def essential_cuts(P: SimplePolygon, s) -> CutSequence:
    s = require_inside(P, s, "anchor")
    allc = visibility_cuts(P, s)
    n = P.n
    ess = []
    for c in allc:
        strict = any(d is not c and d.chord != c.chord and pocket_contains(c, d, n)
                     and not pocket_contains(d, c, n) for d in allc)
        if not strict:
            ess.append(Cut(c.chord, c.reflex_index, c.source_edge, c.pocket, c.pocket_arc, True, c.boundary_rank))
    return CutSequence(tuple(ess), s, P.boundary_param(s) is not None)


def _tour_segments(tours):
    segs = []
    for t in tours:
        pts = t.points if hasattr(t, "points") else [as_point(p) for p in t]
        if len(pts) == 1 or all(p == pts[0] for p in pts):
            segs.append((pts[0], pts[0]))
        segs.extend((a, b) for a, b in zip(pts, pts[1:]) if a != b)
    return segs


def cut_touched(cut: Cut, segs) -> bool:
    a, b = cut.chord
    for p, q in segs:
        if p == q:
            if on_segment(p, a, b):
                return True
        elif segments_intersect(p, q, a, b):
            return True
    return False


def touches_all_cuts(cuts: Sequence[Cut] | CutSequence, tours) -> bool:
    segs = _tour_segments(tours)
    return all(cut_touched(c, segs) for c in cuts)
