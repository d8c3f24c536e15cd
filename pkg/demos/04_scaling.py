"""Time the frontier DP against the matrix chain on dense graphs.

With m ~ n^2 and l = n the DP does about m*l work, so its log-log slope
against m*l should sit near 1.  The chain pays n^3 per step and falls
behind quickly.  Pass --full for the n = 128, 256, 512 grid.
"""
import sys

from rwlab.harness import bench, fit_slope, records_to_csv

ns = (128, 256, 512) if "--full" in sys.argv else (48, 96, 192)
records = bench(ns, alpha=2.0, solver_names=("dp", "matrix_chain"), reps=3)
print(records_to_csv(records))
for name in ("dp", "matrix_chain"):
    print(f"{name:13s} slope vs m*l: {fit_slope(records, name):.2f}")
