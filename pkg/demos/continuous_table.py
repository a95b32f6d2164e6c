"""The continuous constants for a range of d, with the regime switch.

For small d the balanced construction wins and FLD(d) = c_bal; from d = 4 on
the two-ple construction on M(x_bst) and the saturated ple is cheaper.
"""

from fldlab import asymptotic_ratio, solve_profile

print(f"{'d':>8} {'beta':>10} {'x_bst':>10} {'x_bal':>10} {'c_bal':>14} {'c_bst':>14}  regime")
for d in (2, 3, 4, 5, 10, 100, 1000, 10**4, 10**5, 10**6):
    p = solve_profile(d)
    print(f"{d:>8} {p.beta:10.6f} {p.x_bst:10.6f} {p.x_bal:10.6f} {p.c_bal:14.6f} {p.c_bst:14.6f}  {p.regime}")

print("\nFor d = 2 and 3 the peak of g lies past x_bal, where the saturated weight would be negative:")
for d in (2, 3):
    p = solve_profile(d)
    print(f"  d={d}: unconstrained peak {p.x_peak:.6f} > x_bal {p.x_bal:.6f}")

print("\nFLD(d) (log d - log log d) / d creeps up toward 1:")
for d in (10**4, 10**5, 10**6):
    print(f"  d={d:>7}: {asymptotic_ratio(d):.6f}")
