"""Static SVG figures of the triangle and its optimal line sets.

Output is deterministic: a fixed 600x600 viewport with a 10% margin, the
triangle centered, and every line clipped to the viewport rectangle.
"""

from __future__ import annotations

from .geometry import PNorm, UnitLine
from .triangle import (
    SQRT3,
    TrianglePhase,
    canonical_triangle,
    centroid,
    classify_phase,
    family_member,
    reduced_to_line,
    symmetry_orbit,
    triangle_optimal_set,
)

__all__ = ["render_triangle_figure", "lines_for_figure"]

_SIZE = 600.0
_MARGIN = 0.1 * _SIZE
_SCALE = _SIZE - 2.0 * _MARGIN  # world width 1.0 maps onto the drawable span
_Y_OFFSET = 0.5 * (_SIZE - _SCALE * (SQRT3 / 2.0))


def _to_px(x: float, y: float) -> tuple[float, float]:
    return _SIZE / 2.0 + _SCALE * x, _SIZE - _Y_OFFSET - _SCALE * y


def _clip_segment(x1, y1, x2, y2, lo=0.0, hi=_SIZE):
    """Liang-Barsky clip of a segment against the square viewport."""
    dx, dy = x2 - x1, y2 - y1
    t0, t1 = 0.0, 1.0
    for p, q in ((-dx, x1 - lo), (dx, hi - x1), (-dy, y1 - lo), (dy, hi - y1)):
        if p == 0.0:
            if q < 0.0:
                return None
            continue
        r = q / p
        if p < 0.0:
            if r > t1:
                return None
            t0 = max(t0, r)
        else:
            if r < t0:
                return None
            t1 = min(t1, r)
    return (x1 + t0 * dx, y1 + t0 * dy, x1 + t1 * dx, y1 + t1 * dy)


def _line_element(g: UnitLine, color: str) -> str | None:
    nx, ny = g.normal()
    dx, dy = g.direction()
    span = 5.0  # comfortably beyond the viewport in world units
    ax, ay = g.c * nx - span * dx, g.c * ny - span * dy
    bx, by = g.c * nx + span * dx, g.c * ny + span * dy
    seg = _clip_segment(*_to_px(ax, ay), *_to_px(bx, by))
    if seg is None:
        return None
    x1, y1, x2, y2 = (f"{v:.3f}" for v in seg)
    return (f'  <line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
            f'stroke="{color}" stroke-width="2"/>')


def lines_for_figure(p, y: float | None = None) -> list[UnitLine]:
    """The optimal lines to draw at exponent p (family member selected by y)."""
    pn = PNorm.coerce(p)
    phase = classify_phase(pn)
    family = phase in (TrianglePhase.FAMILY_P2, TrianglePhase.FAMILY_P43)
    if y is not None and not family:
        raise ValueError("y selects a family member; p has no optimal family")
    if family:
        member = family_member(pn, 0.0 if y is None else y)
        return symmetry_orbit(reduced_to_line(member))
    return list(triangle_optimal_set(pn).lines)


def render_triangle_figure(p, y: float | None = None) -> str:
    """SVG (1.1) document showing the triangle and its optimal lines."""
    pn = PNorm.coerce(p)
    lines = lines_for_figure(pn, y)
    phase = classify_phase(pn)

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_SIZE:.0f}" height="{_SIZE:.0f}" viewBox="0 0 {_SIZE:.0f} {_SIZE:.0f}">',
        f'  <rect width="{_SIZE:.0f}" height="{_SIZE:.0f}" fill="#ffffff"/>',
    ]
    vertices = canonical_triangle()
    corner_px = [_to_px(v.x, v.y) for v in vertices]
    poly = " ".join(f"{x:.3f},{y:.3f}" for x, y in corner_px)
    parts.append(f'  <polygon points="{poly}" fill="#f2f2f2" stroke="#444444" stroke-width="1.5"/>')

    for g in lines:
        element = _line_element(g, "#1f6feb")
        if element:
            parts.append(element)

    for x, y_px in corner_px:
        parts.append(f'  <circle cx="{x:.3f}" cy="{y_px:.3f}" r="5" fill="#c62828"/>')
    if phase is TrianglePhase.FAMILY_P2:
        cx, cy = _to_px(centroid().x, centroid().y)
        parts.append(f'  <circle cx="{cx:.3f}" cy="{cy:.3f}" r="4" fill="#2e7d32"/>')

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
