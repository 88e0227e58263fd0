"""
Figure gallery of optimal-line sets
===================================

Renders the triangle with its optimal lines for each regime, and the p = 4/3
family at several parameter values, into ./triangle_figures/*.svg.
"""

import math
from pathlib import Path

from lpline.svgfig import render_triangle_figure

OUT = Path("triangle_figures")
OUT.mkdir(exist_ok=True)

SQRT3 = math.sqrt(3.0)

figures = [
    ("p1_sides.svg", "1", None),
    ("p1.2_parallel.svg", "1.2", None),
    ("p1.5_bisectors.svg", "1.5", None),
    ("p3_parallel.svg", "3", None),
    ("pinf_midlines.svg", "inf", None),
    ("p2_pencil_y0.svg", "2", 0.0),
    ("p2_pencil_y0.1.svg", "2", 0.1),
    ("p43_family_y0.svg", "4/3", 0.0),
    ("p43_family_y2s60.svg", "4/3", 2 * SQRT3 / 60),
    ("p43_family_y5s60.svg", "4/3", 5 * SQRT3 / 60),
    ("p43_family_y7s60.svg", "4/3", 7 * SQRT3 / 60),
    ("p43_family_end.svg", "4/3", SQRT3 / 6),
]

for name, p, y in figures:
    svg = render_triangle_figure(p, y)
    path = OUT / name
    path.write_text(svg)
    lines = svg.count("<line ")
    member = "" if y is None else f" (family member y={y:.6f})"
    print(f"wrote {path} with {lines} optimal lines{member}")
