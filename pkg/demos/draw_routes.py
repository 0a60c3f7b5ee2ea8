"""Write SVG pictures of a few instances with their two-watchman routes.

Files land in the directory given as the first argument (default: current).
"""
import sys
from pathlib import Path

from kwatchman import random_orthogonal_polygon, render_svg, solve_exact_l1, validate_polygon

out = Path(sys.argv[1] if len(sys.argv) > 1 else ".")
out.mkdir(parents=True, exist_ok=True)

scenes = {
    "u": (validate_polygon([(0, 0), (6, 0), (6, 4), (4, 4), (4, 2), (2, 2), (2, 4), (0, 4)]), (3, 0)),
    "staircase": (validate_polygon([(0, 0), (6, 0), (6, 2), (4, 2), (4, 4), (2, 4), (2, 6), (0, 6)]), (6, 0)),
}
for seed in (1, 5, 20):
    scenes[f"random{seed}"] = random_orthogonal_polygon(12, seed)

for name, (P, s) in scenes.items():
    sol = solve_exact_l1(P, s, 2)
    path = out / f"{name}.svg"
    path.write_text(render_svg(P, s, sol.tours))
    print(f"{path}: max length {sol.max_length}")
