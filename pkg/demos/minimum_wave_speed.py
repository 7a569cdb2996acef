"""Locate the smallest certifiable wave speed for a fixed damping.

A coarse feasibility scan brackets the transition, then bisection narrows
it to the requested tolerance.  The certificate is sufficient-only, so the
value is an upper bound on the true stability threshold.
"""

from stringstab import SystemDescription, min_speed

sysd = SystemDescription(A=[[2.0, 1.0], [0.0, 1.0]], B=[1.0, 1.0],
                         K=[-10.0, 2.0], c=10.0, c0=0.15)

for N in (0, 1, 2):
    val = min_speed(sysd, c0=0.15, N=N, bracket=(1.0, 20.0), tol=1e-2)
    if val is None:
        print(f"order N = {N}: no certifiable speed in the bracket")
    else:
        print(f"order N = {N}: c_min = {val:.3f}")

print("\nhigher orders certify at lower speeds: the feasible sets are "
      "nested across N")
