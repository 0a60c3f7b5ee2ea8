"""Compare the ordered-cut DP with brute force on random orthogonal polygons.

Prints one row per instance and a tally at the end; any mismatch is a bug.
"""
import sys
import time

from kwatchman import brute_force_l1, essential_cuts, random_orthogonal_polygon, solve_exact_l1, solve_fptas_l1

count = int(sys.argv[1]) if len(sys.argv) > 1 else 40
mismatches = 0
t0 = time.perf_counter()
print(f"{'seed':>4} {'n':>3} {'m':>3} {'k':>2} {'exact':>6} {'oracle':>6} {'fptas(.25)':>10}")
for seed in range(count):
    P, s = random_orthogonal_polygon((8, 10, 12)[seed % 3], seed)
    m = len(essential_cuts(P, s))
    for k in (1, 2):
        exact = solve_exact_l1(P, s, k).max_length
        oracle = brute_force_l1(P, s, k).max_length
        approx = solve_fptas_l1(P, s, k, "0.25").max_length
        mismatches += exact != oracle
        print(f"{seed:>4} {P.n:>3} {m:>3} {k:>2} {exact:>6} {oracle:>6} {float(approx):>10.3f}")
print(f"{mismatches} mismatches over {2 * count} runs in {time.perf_counter() - t0:.1f}s")
