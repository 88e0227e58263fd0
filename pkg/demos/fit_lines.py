"""
Fitting lines under different exponents
=======================================

A quick tour of the solvers: the same point cloud fitted with the sum of
distances (p=1), least squares of the perpendicular distances (p=2), the
worst-case distance (p=inf), and a couple of exponents in between.
"""

import numpy as np

from lpline import Point2, minimize, solve_p1, solve_p2, solve_pinf

rng = np.random.default_rng(7)

# a noisy band of points along y = 0.4 x + 0.2, plus one gross outlier
xs = rng.uniform(0.0, 4.0, size=12)
pts = [Point2(float(x), float(0.4 * x + 0.2 + rng.normal(0.0, 0.05))) for x in xs]
pts.append(Point2(2.0, 3.5))

print("p = 1 (robust, ignores the outlier as much as possible)")
opt = solve_p1(pts)
for g in opt.lines:
    print(f"  line theta={g.theta:.4f} c={g.c:.4f}   total distance {opt.min_value:.4f}")

print("p = 2 (orthogonal least squares)")
opt = solve_p2(pts)
g = opt.lines[0]
print(f"  line theta={g.theta:.4f} c={g.c:.4f}   sum of squares {opt.min_value:.4f}")

print("p = inf (minimal enclosing strip)")
opt = solve_pinf(pts)
g = opt.lines[0]
print(f"  line theta={g.theta:.4f} c={g.c:.4f}   half width {opt.min_value:.4f}")

print("intermediate exponents interpolate between those behaviors")
for p in (1.3, 1.7, 2.5, 4.0, 8.0):
    report = minimize(pts, p)
    g = report.optimal.lines[0]
    print(f"  p={p:4}: theta={g.theta:.4f} c={g.c:.4f} value={report.optimal.min_value:.6f} "
          f"({report.evaluations} evaluations)")
