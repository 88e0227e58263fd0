"""
Phase transitions of the optimal lines on the equilateral triangle
==================================================================

As the exponent p moves through [1, inf], the set of optimal lines for the
vertices of the unit equilateral triangle switches between three qualitative
regimes, with one-parameter families exactly at p = 4/3 and p = 2:

    1 <= p < 4/3   three side-parallel lines at offset x0(p)
    p = 4/3        a one-parameter family (plus its symmetry orbit)
    4/3 < p < 2    the three perpendicular bisectors
    p = 2          every line through the centroid
    2 < p <= inf   three side-parallel lines again
"""

import math

from lpline import (
    classify_phase,
    family_member,
    reduced_objective,
    side_parallel_offset,
    triangle_min_value,
    triangle_optimal_set,
)
from lpline.fileio import locate_transitions

print(f"{'p':>8}  {'phase':<12} {'min value':>12}  {'x0(p)':>10}")
for p in (1.0, 1.2, 4.0 / 3.0, 1.5, 1.8, 2.0, 2.5, 4.0, 10.0, math.inf):
    phase = classify_phase(p).value
    x0 = "" if p in (1.0, math.inf) else f"{side_parallel_offset(p):10.6f}"
    p_text = "inf" if math.isinf(p) else f"{p:.4f}"
    print(f"{p_text:>8}  {phase:<12} {triangle_min_value(p):12.8f}  {x0:>10}")

print()
print("transition exponents located by the sign change of the regime indicator:")
for p in locate_transitions(1.01, 3.0):
    print(f"  p = {p:.12f}")

print()
print("the optimal families are flat: the objective is constant along them")
for p, label in ((2.0, "p = 2"), (4.0 / 3.0, "p = 4/3")):
    values = [reduced_objective(family_member(p, y), p)
              for y in (0.0, 0.05, 0.1, 0.2, math.sqrt(3.0) / 6.0)]
    print(f"  {label}: spread {max(values) - min(values):.2e} around {values[0]:.10f}")

print()
print("line counts per regime (families reported as descriptors):")
for p in (1.1, 1.5, 2.0, "4/3", 5.0):
    opt = triangle_optimal_set(p)
    kind = f"{len(opt.lines)} lines" if opt.lines else f"family: {opt.families[0].__class__.__name__}"
    print(f"  p={p}: {kind}, min {opt.min_value:.8f}")
