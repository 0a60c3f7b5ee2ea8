from __future__ import annotations

import functools

import numpy as np
import pytest

from kwatchman import essential_cuts, random_orthogonal_polygon, validate_polygon
from kwatchman.geometry import Point

SQ = validate_polygon([(0, 0), (4, 0), (4, 4), (0, 4)])
UP = validate_polygon([(0, 0), (6, 0), (6, 4), (4, 4), (4, 2), (2, 2), (2, 4), (0, 4)])
LP = validate_polygon([(0, 0), (4, 0), (4, 2), (2, 2), (2, 4), (0, 4)])
ST = validate_polygon([(0, 0), (6, 0), (6, 2), (4, 2), (4, 4), (2, 4), (2, 6), (0, 6)])

UP_S = Point(3, 0)
LP_S = Point(4, 0)
ST_S = Point(6, 0)
SQ_S = Point(0, 0)

NAMED = {"SQ": (SQ, SQ_S), "UP": (UP, UP_S), "LP": (LP, LP_S), "ST": (ST, ST_S)}


@functools.lru_cache(maxsize=None)
def corpus(size: int = 50, max_n: int = 12, max_m: int = 6, pool: int = 300):
    """Deterministic generated instances, favouring ones with several essential cuts."""
    rich, plain = [], []
    for seed in range(pool):
        P, s = random_orthogonal_polygon((8, 10, 12)[seed % 3], seed)
        m = len(essential_cuts(P, s))
        if P.n <= max_n and 1 <= m <= max_m:
            (rich if m >= 2 else plain).append((f"gen{seed}", P, s))
    return tuple((rich + plain)[:size])


def interior_samples(P, count: int, seed: int = 0, margin: float = 1e-6) -> np.ndarray:
    """Uniform points strictly inside P and farther than ``margin`` from its boundary."""
    rng = np.random.default_rng(seed)
    x0, y0, x1, y1 = (float(v) for v in P.bbox)
    E = P.float_edges
    out = []
    have = 0
    while have < count:
        q = rng.uniform([x0, y0], [x1, y1], size=(2 * count, 2))
        x, y = q[:, 0:1], q[:, 1:2]
        cx, cy, dx, dy = (E[None, :, k] for k in range(4))
        up = (cy <= y) & (dy > y)
        down = (dy <= y) & (cy > y)
        cross = (dx - cx) * (y - cy) - (dy - cy) * (x - cx)
        inside = (np.where(up & (cross > 0), 1, 0) - np.where(down & (cross < 0), 1, 0)).sum(axis=1) != 0
        ex, ey = dx - cx, dy - cy
        t = np.clip(((x - cx) * ex + (y - cy) * ey) / (ex * ex + ey * ey), 0, 1)
        gap = np.hypot(x - cx - t * ex, y - cy - t * ey).min(axis=1)
        keep = q[inside & (gap > margin)]
        out.append(keep)
        have += len(keep)
    return np.concatenate(out)[:count]


@pytest.fixture(params=sorted(NAMED))
def named(request):
    P, s = NAMED[request.param]
    return request.param, P, s


ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"CRITERION {n}: {'PASS' if ok else 'FAIL'} {detail}")
