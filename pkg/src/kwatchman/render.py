"""Deterministic SVG pictures of an instance and, optionally, its routes."""
from __future__ import annotations

from .cuts import essential_cuts
from .geometry import Point, SimplePolygon

PALETTE = ("#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")
_SIZE = 480.0
_PAD = 20.0


def _f(x: float) -> str:
    return f"{x:.3f}".rstrip("0").rstrip(".")


def render_svg(P: SimplePolygon, s: Point, tours=()) -> str:
    x0, y0, x1, y1 = (float(v) for v in P.bbox)
    span = max(x1 - x0, y1 - y0, 1e-9)
    scale = (_SIZE - 2 * _PAD) / span
    w = (x1 - x0) * scale + 2 * _PAD
    h = (y1 - y0) * scale + 2 * _PAD

    def xy(p):
        return _f(_PAD + (float(p[0]) - x0) * scale), _f(h - _PAD - (float(p[1]) - y0) * scale)

    def pts(seq):
        return " ".join(",".join(xy(p)) for p in seq)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_f(w)}" height="{_f(h)}" '
        f'viewBox="0 0 {_f(w)} {_f(h)}">',
        f'<polygon points="{pts(P.vertices)}" fill="#f4f4f4" stroke="#000" stroke-width="1.5"/>',
    ]
    for c in essential_cuts(P, s):
        (ax, ay), (bx, by) = xy(c.chord[0]), xy(c.chord[1])
        out.append(f'<line class="cut" x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}" '
                   'stroke="#555" stroke-width="1" stroke-dasharray="4 3"/>')
    for i, tour in enumerate(tours):
        seq = tour.points if hasattr(tour, "points") else tour
        out.append(f'<polyline class="tour" points="{pts(seq)}" fill="none" '
                   f'stroke="{PALETTE[i % len(PALETTE)]}" stroke-width="2.5" stroke-linejoin="round"/>')
    sx, sy = xy(s)
    out.append(f'<circle class="anchor" cx="{sx}" cy="{sy}" r="4" fill="#000"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
