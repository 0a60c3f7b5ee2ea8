"""Walk through every solver on the U-shaped polygon.

The U has two notches hanging down from the top edge.  A watchman parked at
the middle of the bottom edge cannot see the far corners of either notch,
so somebody has to step sideways.  Run with ``python demos/u_polygon_tour.py``.
"""
from kwatchman import (
    essential_cuts, r_min_quota, route_visible_area, solve_exact_l1, solve_fptas_l1, solve_fptas_l2,
    solve_quota_k, solve_variable_k, validate_polygon, visible_area,
)

U = validate_polygon([(0, 0), (6, 0), (6, 4), (4, 4), (4, 2), (2, 2), (2, 4), (0, 4)])
s = (3, 0)


def show(label, sol):
    routes = "  |  ".join(" -> ".join(f"({p.x},{p.y})" for p in t.points) for t in sol.tours)
    print(f"{label:<28} max length {float(sol.max_length):6.3f}   {routes}")


print(f"area {U.area}, seen from s alone {visible_area(U, s)}")
for c in essential_cuts(U, s):
    print("essential cut", c.chord)
print()

for k in (1, 2, 3):
    show(f"exact L1, k={k}", solve_exact_l1(U, s, k))
show("FPTAS L1, k=2, eps=0.25", solve_fptas_l1(U, s, 2, "0.25"))
show("FPTAS L2, k=2, eps=0.5", solve_fptas_l2(U, s, 2, 0.5))
show("variable k, k=2, eps=0.5", solve_variable_k(U, s, 2, 0.5))
print()

for A in (18, 19, 20):
    sol = solve_quota_k(U, s, 2, A, 0.5)
    show(f"quota A={A}", sol)
    print(f"{'':<28} sees {float(route_visible_area(U, sol.tours))}, r_min_quota {r_min_quota(U, s, A):.3f}")
