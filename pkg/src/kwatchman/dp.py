"""Ordered-cut dynamic programming for anchored k-watchman routes.

Cuts are visited in boundary order. A state after layer j records, per
watchman, where it currently stands and how long its path is; one watchman
advances to cut j on every layer. Watchman symmetry is removed by keeping the
per-watchman entries sorted.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Hashable, Iterable

from .cuts import essential_cuts
from .errors import ResourceCap
from .geometry import L1, L2, SimplePolygon, Tour, as_number, div, make_tour, require_inside
from .hanan import GridGraph, build_hanan_grid, contact_nodes

DEFAULT_MAX_STATES = 2_000_000


@dataclass(frozen=True)
class KSolution:
    tours: tuple[Tour, ...]
    max_length: object
    assignment: tuple[tuple[int, ...], ...]
    metric: str
    certificates: dict = field(default_factory=dict, compare=False)

    @property
    def k(self) -> int:
        return len(self.tours)

    @property
    def lengths(self) -> list:
        return [t.length for t in self.tours]


@dataclass(frozen=True)
class BucketScheme:
    L: object
    count: int
    width: object

    @classmethod
    def build(cls, L, n: int, k: int, eps) -> "BucketScheme":
        eps = Fraction(as_number(eps))
        count = math.ceil(Fraction(n * k) / eps)
        width = Fraction(L) / count if L else Fraction(0)
        return cls(L, count, width)

    def index(self, length) -> int:
        if not self.width:
            return 0
        return math.floor(Fraction(length) / self.width)


# ------------------------------------------------------------------ engine

@dataclass
class DPResult:
    value: object
    lengths: tuple
    routes: tuple  # per watchman: tuple of (node, cut index) in visiting order
    states: int


def ordered_cut_dp(
    k: int,
    m: int,
    start: Hashable,
    moves: Callable[[int, Hashable], Iterable[tuple[Hashable, object]]],
    back: Callable[[Hashable], object],
    quantize: Callable[[object], object] = lambda x: x,
    cap=None,
    max_states: int = DEFAULT_MAX_STATES,
) -> DPResult | None:
    """Run the layered DP and return the best closed solution.

    ``moves(j, u)`` yields ``(v, d)`` for the places ``v`` on cut ``j`` a
    watchman standing at ``u`` may step to, at cost ``d``. ``back(u)`` is the
    cost of returning to the anchor. States whose (path + return) exceeds
    ``cap`` are dropped; among states with the same endpoints only the
    Pareto-minimal length vectors survive.
    """
    # a state: tuple of (node, q, length, route) sorted by (node, q, length)
    first = tuple((start, quantize(0), 0, ()) for _ in range(k))
    layer = {_key(first): first}
    total = 1
    for j in range(m):
        nxt: dict = {}
        for st in layer.values():
            seen_pairs = set()
            for i, (u, _, l, route) in enumerate(st):
                if (u, l) in seen_pairs:  # identical watchmen give identical successors
                    continue
                seen_pairs.add((u, l))
                for v, d in moves(j, u):
                    nl = l + d
                    if cap is not None and nl + back(v) > cap:
                        continue
                    entry = (v, quantize(nl), nl, route + ((v, j),))
                    new = tuple(sorted(st[:i] + (entry,) + st[i + 1:], key=_order))
                    key = _key(new)
                    old = nxt.get(key)
                    if old is None or _lens(new) < _lens(old):
                        nxt[key] = new
        layer = _prune(nxt)
        total += len(layer)
        if len(layer) > max_states:
            raise ResourceCap(f"{len(layer)} states on layer {j + 1} exceed the cap of {max_states}")
        if not layer:
            return None
    best = None
    for st in layer.values():
        closed = [l + back(u) for u, _, l, _ in st]
        val = max(closed)
        if best is None or val < best[0] or (val == best[0] and sum(closed) < best[3]):
            best = (val, tuple(closed), tuple(r for _, _, _, r in st), sum(closed))
    return DPResult(best[0], best[1], best[2], total)


def _order(e):
    return (repr(e[0]), e[1], e[2])


def _key(st):
    return tuple((u, q) for u, q, _, _ in st)


def _lens(st):
    return sorted(l for _, _, l, _ in st)


def _prune(states: dict) -> dict:
    groups: dict = {}
    for key, st in states.items():
        groups.setdefault(tuple(u for u, _ in key), []).append((key, st))
    out = {}
    for members in groups.values():
        if len(members) == 1:
            out[members[0][0]] = members[0][1]
            continue
        vecs = [(key, st, tuple(l for _, _, l, _ in st)) for key, st in members]
        vecs.sort(key=lambda t: sum(t[2]))
        kept = []
        for key, st, vec in vecs:
            if any(all(a <= b for a, b in zip(kv, vec)) for _, _, kv in kept):
                continue
            kept.append((key, st, vec))
        for key, st, _ in kept:
            out[key] = st
    return out


# ---------------------------------------------------------------- L1 solver

def _rotations(m: int, on_boundary: bool):
    if on_boundary or m <= 1:
        return [tuple(range(m))]
    return [tuple((r + t) % m for t in range(m)) for r in range(m)]


def _solve_grid(g: GridGraph, k: int, quantize, cap, max_states) -> tuple[DPResult, tuple]:
    src = g.source
    m = len(g.cut_nodes)
    best, best_order = None, None
    for order in _rotations(m, g.cuts.s_on_boundary):
        def moves(j, u, order=order):
            idx, d = contact_nodes(g, u, order[j])
            return [(v, d) for v in idx]

        res = ordered_cut_dp(k, m, src, moves, lambda u: int(g.scaled[u, src]),
                             quantize, cap, max_states)
        if res is not None and (best is None or res.value < best.value):
            best, best_order = res, order
    return best, best_order


def _grid_solution(g: GridGraph, res: DPResult, order, metric=L1, **cert) -> KSolution:
    src = g.source
    tours, assign = [], []
    for route in res.routes:
        pts = [g.s]
        cur = src
        for v, j in route:
            pts.extend(g.point_path(cur, v)[1:])
            cur = v
        pts.extend(g.point_path(cur, src)[1:])
        tours.append(make_tour(pts, metric))
        assign.append(tuple(sorted(order[j] for _, j in route)))
    order_key = sorted(range(len(tours)), key=lambda i: (assign[i], tours[i].points))
    tours = tuple(tours[i] for i in order_key)
    assign = tuple(assign[i] for i in order_key)
    max_len = max(t.length for t in tours)
    return KSolution(tours, max_len, assign, metric, dict(cert))


def _prepare(P: SimplePolygon, s):
    s = require_inside(P, s, "anchor")
    return build_hanan_grid(P, s, essential_cuts(P, s))


def shortest_single_route_l1(P: SimplePolygon, s, *, max_states: int = DEFAULT_MAX_STATES):
    """Length L and tour of a shortest single L1 watchman route from s."""
    g = _prepare(P, s)
    res, order = _solve_grid(g, 1, lambda x: x, None, max_states)
    sol = _grid_solution(g, res, order)
    return sol.max_length, sol.tours[0]


def _certify(P, s, sol: KSolution, L, k, **extra) -> KSolution:
    from .cuts import touches_all_cuts

    cuts = essential_cuts(P, require_inside(P, s))
    cert = dict(sol.certificates)
    cert.update(
        cuts_covered=touches_all_cuts(cuts, sol.tours),
        lower_bound=div(L, k),
        upper_bound=L,
        **extra,
    )
    return replace(sol, certificates=cert)


def solve_exact_l1(P: SimplePolygon, s, k: int, *, max_states: int = DEFAULT_MAX_STATES) -> KSolution:
    if k < 1:
        raise ValueError("k must be at least 1")
    g = _prepare(P, s)
    single, order1 = _solve_grid(g, 1, lambda x: x, None, max_states)
    L = single.value
    res, order = _solve_grid(g, k, lambda x: x, L, max_states)
    sol = _grid_solution(g, res, order)
    return _certify(P, g.s, sol, div_scale(L, g), k, mode="exact", states=res.states)


def div_scale(v, g: GridGraph):
    return Fraction(int(v), g.scale) if g.scale != 1 else int(v)


def solve_fptas_l1(P: SimplePolygon, s, k: int, eps, *, max_states: int = DEFAULT_MAX_STATES) -> KSolution:
    if k < 1:
        raise ValueError("k must be at least 1")
    eps = as_number(eps)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    g = _prepare(P, s)
    single, order1 = _solve_grid(g, 1, lambda x: x, None, max_states)
    L = single.value
    scheme = BucketScheme.build(L, P.n, k, eps)
    cap = L + math.ceil(P.n * scheme.width) if L else 0
    res, order = _solve_grid(g, k, scheme.index, cap, max_states)
    sol = _grid_solution(g, res, order)
    return _certify(P, g.s, sol, div_scale(L, g), k, mode="fptas", epsilon=eps,
                    buckets=scheme.count, bucket_width=scheme.width / g.scale, states=res.states)


def reevaluate_l2(sol: KSolution) -> KSolution:
    tours = tuple(t.with_metric(L2) for t in sol.tours)
    cert = dict(sol.certificates)
    eps = cert.get("epsilon", 0)
    cert["l2_bound_factor"] = math.sqrt(2) * (1 + float(eps))
    return KSolution(tours, max(t.length for t in tours), sol.assignment, L2, cert)
