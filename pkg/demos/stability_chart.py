"""Sweep (damping, order) cells into a stability chart CSV.

Each cell holds the minimum certifiable wave speed, or is empty when no
speed in the bracket certifies.  Failures in one cell never abort the
sweep; they are reported in the status column.
"""

import numpy as np

from stringstab import SystemDescription, stability_chart

# both A and A + BK lack stable eigenvalues; order 0 certifies nothing
sysd = SystemDescription(A=[[0.0, 1.0], [-2.0, 0.1]], B=[0.0, 1.0],
                         K=[1.0, 0.0], c=5.0, c0=0.5)

chart = stability_chart(sysd, c0_grid=np.linspace(0.3, 0.9, 4),
                        orders=[0, 1], bracket=(1.0, 20.0), tol=0.05)

print(chart.to_csv())
with open("chart.csv", "w") as f:
    f.write(chart.to_csv())
print("wrote chart.csv")

for c0 in chart.c0_grid:
    print(f"c0 = {c0:.2f}: c_min by order = {chart.column(c0)}")
