"""Hanan grid of an orthogonal polygon and L1 geodesics on it."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import dijkstra

from .cuts import Cut, CutSequence, essential_cuts
from .errors import NotOrthogonal
from .geometry import L1, Path, Point, SimplePolygon, as_point, div, on_segment, require_inside, segment_inside


def _common_scale(values) -> int:
    den = 1
    for v in values:
        if isinstance(v, Fraction):
            den = den * v.denominator // math.gcd(den, v.denominator)
    return den


@dataclass(eq=False)
class GridGraph:
    P: SimplePolygon
    s: Point
    xs: tuple
    ys: tuple
    nodes: tuple[Point, ...]
    index: dict
    edges: tuple[tuple[int, int], ...]
    scale: int
    cuts: CutSequence
    cut_nodes: tuple[tuple[int, ...], ...]
    usable: np.ndarray
    _dist: np.ndarray = field(repr=False)
    _pred: np.ndarray = field(repr=False)

    @property
    def source(self) -> int:
        return self.index[self.s]

    @cached_property
    def scaled(self) -> np.ndarray:
        """All-pairs distances times ``scale``; integral, so safe to compare exactly."""
        return np.rint(self._dist).astype(np.int64)

    def distance(self, a: int, b: int):
        return div(int(self.scaled[a, b]), self.scale)

    def node_path(self, a: int, b: int) -> list[int]:
        out = [b]
        while out[-1] != a:
            out.append(int(self._pred[a, out[-1]]))
        return out[::-1]

    def point_path(self, a: int, b: int) -> list[Point]:
        return [self.nodes[i] for i in self.node_path(a, b)]


def build_hanan_grid(P: SimplePolygon, s, cuts: CutSequence | None = None, *, extra_points=()) -> GridGraph:
    """Grid graph on the edge extensions of P and the lines through s.

    ``extra_points`` adds the axis lines through each given point, which
    lets callers refine the grid (the brute-force witnesses use this).
    """
    if not P.is_orthogonal:
        raise NotOrthogonal("the L1 solver needs an axis-parallel polygon")
    s = require_inside(P, s, "anchor")
    if cuts is None:
        cuts = essential_cuts(P, s)
    extra = [as_point(p) for p in extra_points]
    xs = tuple(sorted({v.x for v in P.vertices} | {s.x} | {p.x for p in extra}))
    ys = tuple(sorted({v.y for v in P.vertices} | {s.y} | {p.y for p in extra}))
    scale = _common_scale(xs + ys)
    nodes, index = [], {}
    for x in xs:
        for y in ys:
            p = Point(x, y)
            if P.contains(p):
                index[p] = len(nodes)
                nodes.append(p)
    edges, w = [], []

    def link(a: Point, b: Point):
        if segment_inside(P, a, b):
            edges.append((index[a], index[b]))
            w.append(int((abs(a.x - b.x) + abs(a.y - b.y)) * scale))

    for x in xs:
        col = [Point(x, y) for y in ys if Point(x, y) in index]
        for a, b in zip(col, col[1:]):
            link(a, b)
    for y in ys:
        row = [Point(x, y) for x in xs if Point(x, y) in index]
        for a, b in zip(row, row[1:]):
            link(a, b)
    N = len(nodes)
    if edges:
        e = np.array(edges)
        A = coo_matrix((np.array(w, dtype=float), (e[:, 0], e[:, 1])), shape=(N, N)).tocsr()
    else:
        A = coo_matrix((N, N)).tocsr()
    dist, pred = dijkstra(A, directed=False, return_predecessors=True)

    usable = np.ones(N, dtype=bool)
    cut_nodes = []
    for c in cuts:
        a, b = c.chord
        on = tuple(i for i, p in enumerate(nodes) if on_segment(p, a, b))
        cut_nodes.append(on)
        for i, p in enumerate(nodes):
            if usable[i] and i not in on and c.pocket.contains(p):
                usable[i] = False
    return GridGraph(P, s, xs, ys, tuple(nodes), index, tuple(edges), scale, cuts,
                     tuple(cut_nodes), usable, dist, pred)


def l1_geodesic(g: GridGraph, a, b) -> tuple:
    """Length and one shortest rectilinear path between two grid nodes."""
    ia = g.index[a] if not isinstance(a, (int, np.integer)) else int(a)
    ib = g.index[b] if not isinstance(b, (int, np.integer)) else int(b)
    return g.distance(ia, ib), Path(tuple(g.point_path(ia, ib)), L1)


def contact_nodes(g: GridGraph, p: int, j: int) -> tuple[tuple[int, ...], int]:
    """Usable nodes on cut j nearest to node p, with the scaled distance."""
    cand = [c for c in g.cut_nodes[j] if g.usable[c]]
    d = g.scaled[p, cand]
    best = int(d.min())
    return tuple(c for c, x in zip(cand, d) if x == best), best


def contact_points(g: GridGraph, p, cut: Cut | int) -> tuple[frozenset, object]:
    """All grid points on the cut realising the L1 distance from p, and that distance."""
    ip = g.index[p] if not isinstance(p, (int, np.integer)) else int(p)
    j = cut if isinstance(cut, int) else [c.chord for c in g.cuts].index(cut.chord)
    idx, best = contact_nodes(g, ip, j)
    return frozenset(g.nodes[i] for i in idx), div(best, g.scale)
