"""Brute-force reference solvers and a random orthogonal polygon generator.

These are deliberately naive and share no search code with the solvers:
each enumerates every assignment of cuts to watchmen and then finds each
watchman's best ordered walk through *all* candidate points on its cuts.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cuts import essential_cuts
from .errors import TooLarge
from .geometry import (
    Point, SimplePolygon, as_number, dist2, geodesic_distance_matrix, lerp, require_inside,
    validate_polygon,
)
from .hanan import build_hanan_grid


@dataclass(frozen=True)
class OracleResult:
    max_length: object
    assignment: tuple
    method: str
    resolution: object = None


def _walk(D, start, layers, back):
    """Cheapest start -> one point per layer (in order) -> start."""
    cur = {start: 0}
    for layer in layers:
        cur = {v: min(c + D[u][v] for u, c in cur.items()) for v in layer}
    return min(c + back[u] for u, c in cur.items())


def _orders(cuts_of_one, on_boundary):
    if on_boundary or len(cuts_of_one) <= 1:
        return [cuts_of_one]
    return [cuts_of_one[r:] + cuts_of_one[:r] for r in range(len(cuts_of_one))]


def _enumerate(k, m, per_cut_points, D, start, back, on_boundary):
    best, best_assign = None, None
    for assign in itertools.product(range(k), repeat=m):
        # watchmen are interchangeable: only canonical labelings
        if any(assign[i] > max(assign[:i], default=-1) + 1 for i in range(m)):
            continue
        worst = 0
        for w in range(k):
            mine = [j for j in range(m) if assign[j] == w]
            if not mine:
                continue
            cost = min(_walk(D, start, [per_cut_points[j] for j in order], back)
                       for order in _orders(mine, on_boundary))
            worst = max(worst, cost)
            if best is not None and worst >= best:
                break
        if best is None or worst < best:
            best, best_assign = worst, assign
    return best, best_assign


def _chord_samples(a, b, h) -> list[Point]:
    """Points every h along chord a-b starting at a, plus b itself."""
    length = Fraction(dist2(a, b)) if a.x != b.x and a.y != b.y else abs(b.x - a.x) + abs(b.y - a.y)
    steps = math.floor(length / h)
    ts = [min(Fraction(1), h * i / length) for i in range(steps + 1)] + [Fraction(1)]
    return [lerp(a, b, t) for t in dict.fromkeys(ts)]


def brute_force_l1(P: SimplePolygon, s, k: int, pitch=None) -> OracleResult:
    """Exact L1 optimum by enumeration over contact nodes.

    With ``pitch`` the grid is refined so every cut is also sampled at that
    spacing; the result then bounds what continuous contacts could achieve.
    """
    s = require_inside(P, s, "anchor")
    cuts = essential_cuts(P, s)
    m = len(cuts)
    if m > 8 or k > 3:
        raise TooLarge(f"brute force limited to m <= 8 and k <= 3 (got m={m}, k={k})")
    if m == 0:
        return OracleResult(0, (), "exact-enumeration")
    extra = []
    if pitch is not None:
        for c in cuts:
            extra.extend(_chord_samples(*c.chord, Fraction(as_number(pitch))))
    g = build_hanan_grid(P, s, cuts, extra_points=extra)
    D = g.scaled.tolist()
    src = g.source
    layers = [[v for v in g.cut_nodes[j] if g.usable[v]] for j in range(m)]
    back = [row[src] for row in D]
    best, assign = _enumerate(k, m, layers, D, src, back, cuts.s_on_boundary)
    value = Fraction(best, g.scale)
    value = value.numerator if value.denominator == 1 else value
    return OracleResult(value, assign, "exact-enumeration", None if pitch is None else as_number(pitch))


def brute_force_l2_discretized(P: SimplePolygon, s, k: int, h) -> OracleResult:
    """Upper bound on the Euclidean optimum with contacts sampled every h along each cut."""
    s = require_inside(P, s, "anchor")
    cuts = essential_cuts(P, s)
    m = len(cuts)
    if m > 6 or k > 2:
        raise TooLarge(f"discretized oracle limited to m <= 6 and k <= 2 (got m={m}, k={k})")
    if m == 0:
        return OracleResult(0.0, (), "discretized", as_number(h))
    h = Fraction(as_number(h))
    pts = [s]
    layers = []
    for c in cuts:
        samples = _chord_samples(*c.chord, h)
        layers.append(list(range(len(pts), len(pts) + len(samples))))
        pts.extend(samples)
    D = geodesic_distance_matrix(P, pts, pts)
    D = np.minimum(D, D.T).tolist()
    back = [row[0] for row in D]
    best, assign = _enumerate(k, m, layers, D, 0, back, cuts.s_on_boundary)
    return OracleResult(float(best), assign, "discretized", h)


# ------------------------------------------------------------------ generator

def _boundary_of_cells(cells: set) -> list[tuple[int, int]]:
    nxt = {}
    for x, y in cells:
        if (x, y - 1) not in cells:
            nxt[(x, y)] = (x + 1, y)
        if (x + 1, y) not in cells:
            nxt[(x + 1, y)] = (x + 1, y + 1)
        if (x, y + 1) not in cells:
            nxt[(x + 1, y + 1)] = (x, y + 1)
        if (x - 1, y) not in cells:
            nxt[(x, y + 1)] = (x, y)
    start = min(nxt)
    ring = [start]
    while True:
        p = nxt[ring[-1]]
        if p == start:
            break
        ring.append(p)
    out = []
    m = len(ring)
    for i in range(m):
        a, b, c = ring[i - 1], ring[i], ring[(i + 1) % m]
        if (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]) != 0:
            out.append(b)
    return out


def _tree_cells(tree_nodes: set, tree_edges: set) -> set:
    cells = {(2 * i, 2 * j) for i, j in tree_nodes}
    for (a, b) in tree_edges:
        cells.add((a[0] + b[0], a[1] + b[1]))
    return cells


def random_orthogonal_polygon(n_target: int, seed: int, size: int = 4):
    """Random simple orthogonal polygon with about n_target vertices and an anchor on its boundary."""
    if n_target < 4 or n_target % 2:
        raise ValueError("n_target must be an even number >= 4")
    rng = np.random.default_rng(seed)
    grid = max(size, int(math.ceil(math.sqrt(n_target))) + 1)
    root = (int(rng.integers(grid)), int(rng.integers(grid)))
    nodes, edges = {root}, set()
    ring = _boundary_of_cells(_tree_cells(nodes, edges))
    attempts = 0
    while len(ring) < n_target and attempts < 500:
        attempts += 1
        frontier = sorted({(a, (a[0] + dx, a[1] + dy)) for a in nodes for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1))
                           if 0 <= a[0] + dx < grid and 0 <= a[1] + dy < grid and (a[0] + dx, a[1] + dy) not in nodes})
        if not frontier:
            break
        a, b = frontier[int(rng.integers(len(frontier)))]
        trial = _boundary_of_cells(_tree_cells(nodes | {b}, edges | {(a, b)}))
        if len(trial) > n_target + 2:
            continue
        nodes.add(b)
        edges.add((a, b))
        ring = trial
    cols = np.concatenate([[0], np.cumsum(rng.integers(1, 4, size=4 * grid + 2))])
    rows = np.concatenate([[0], np.cumsum(rng.integers(1, 4, size=4 * grid + 2))])
    x0 = min(x for x, _ in ring)
    y0 = min(y for _, y in ring)
    verts = [(int(cols[x] - cols[x0]), int(rows[y] - rows[y0])) for x, y in ring]
    P = validate_polygon(verts)
    i = int(rng.integers(P.n))
    a, b = P.edges[i]
    span = int(abs(b.x - a.x) + abs(b.y - a.y))
    t = Fraction(int(rng.integers(span + 1)), span)
    s = lerp(a, b, t)
    return P, Point(s.x, s.y)
