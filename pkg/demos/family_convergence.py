"""Finite-n reduced LP for P(1,d;n) climbing toward the continuous optimum.

Each column is a block template for a maximal-reversing ple. The optimum c0
is non-decreasing in n and stays below FLD(d).
"""

import time

from fldlab import reduced_lp_bound, solve_profile

for d in (2, 3, 4):
    fld = solve_profile(d).fld
    print(f"d={d}  FLD(d) = {fld:.6f}")
    for n in (5, 10, 20, 50, 200, 1000, 2000):
        if n <= d:
            continue
        t0 = time.perf_counter()
        res = reduced_lp_bound(n, d)
        dt = time.perf_counter() - t0
        print(f"  n={n:>5}  c0={res.c0:.6f}  gap={fld - res.c0:.2e}  "
              f"columns={res.columns:>8}  support={len(res.support)}  ({dt:.2f}s)")

small = reduced_lp_bound(5, 2, "rational")
print(f"\nexact c0 for n=5, d=2: {small.c0}")
for T, w in small.support:
    print(f"  a={T.a} {T.label:>4}  blocks A={T.minimal_blocks} B={T.maximal_blocks}  weight {w}")
