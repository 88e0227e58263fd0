"""Point-set file parsing and the p-sweep CSV pipeline.

Point files are either CSV with one ``x,y`` pair per line ('#' starts a
comment) or a JSON array of ``[x, y]`` pairs.  All numbers are written with
17 significant digits so that parsing a written file reproduces the values
bit-exactly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from ._parallel import parallel_map
from .geometry import PNorm, Point2
from .triangle import (
    TrianglePhase,
    classify_phase,
    side_parallel_offset,
    triangle_min_value,
)
from .verification import regime_indicator

__all__ = [
    "fmt",
    "parse_points_text",
    "load_points",
    "SweepRow",
    "triangle_sweep",
    "locate_transitions",
    "write_sweep_csv",
    "read_sweep_csv",
]

SWEEP_HEADER = "p,phase,min_value,x0,family,line_count"


def fmt(value: float) -> str:
    """Serialize a float with 17 significant digits (round-trip safe)."""
    return format(value, ".17g")


def parse_points_text(text: str) -> list[Point2]:
    stripped = text.lstrip()
    if stripped.startswith("["):
        data = json.loads(text)
        pairs = [(float(item[0]), float(item[1])) for item in data]
    else:
        pairs = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = [part.strip() for part in line.split(",")]
            if len(parts) != 2:
                raise ValueError(f"line {lineno}: expected 'x,y'")
            pairs.append((float(parts[0]), float(parts[1])))
    points = [Point2(x, y) for x, y in pairs]
    if len(points) < 2:
        raise ValueError("need at least 2 points")
    return points


def load_points(path: str | Path) -> list[Point2]:
    return parse_points_text(Path(path).read_text())


@dataclass(frozen=True)
class SweepRow:
    p: float  # math.inf encodes the "inf" row
    phase: str
    min_value: float
    x0: float | None
    family: str | None
    line_count: int | str

    def to_csv(self) -> str:
        p_text = "inf" if math.isinf(self.p) else fmt(self.p)
        x0_text = "" if self.x0 is None else fmt(self.x0)
        fam_text = self.family or ""
        return f"{p_text},{self.phase},{fmt(self.min_value)},{x0_text},{fam_text},{self.line_count}"


_PHASE_TEXT = {
    TrianglePhase.PARALLEL: "parallel",
    TrianglePhase.BISECTOR: "bisector",
    TrianglePhase.FAMILY_P2: "family-p2",
    TrianglePhase.FAMILY_P43: "family-p43",
}


def _row_for(p: PNorm) -> SweepRow:
    phase = classify_phase(p)
    value = triangle_min_value(p)
    if p.is_inf:
        return SweepRow(math.inf, _PHASE_TEXT[phase], value, None, None, 3)
    x0 = None if p.value <= 1.0 else side_parallel_offset(p)
    if phase in (TrianglePhase.FAMILY_P2, TrianglePhase.FAMILY_P43):
        return SweepRow(p.value, _PHASE_TEXT[phase], value, x0, _PHASE_TEXT[phase], "family")
    return SweepRow(p.value, _PHASE_TEXT[phase], value, x0, None, 3)


def triangle_sweep(p_min: float, p_max: float, steps: int,
                   include_inf: bool = False) -> list[SweepRow]:
    if p_min < 1.0:
        raise ValueError("p must be >= 1")
    if p_max < p_min or steps < 1:
        raise ValueError("invalid sweep range")
    if steps == 1:
        ps: list[PNorm] = [PNorm.coerce(p_min)]
    else:
        ps = [PNorm.coerce(p_min + (p_max - p_min) * k / (steps - 1))
              for k in range(steps)]
    # the family exponents are measure-zero; surface them whenever in range
    for q in (Fraction(4, 3), Fraction(2)):
        if p_min < q < p_max and not any(pn.value == float(q) for pn in ps):
            ps.append(PNorm.coerce(q))
    ps.sort(key=lambda pn: pn.value)
    rows = parallel_map(_row_for, ps)
    if include_inf:
        rows.append(_row_for(PNorm.infinity()))
    return rows


def _indicator_at_p(p: float) -> float:
    return regime_indicator(1.0 / (p - 1.0))


def locate_transitions(p_min: float, p_max: float, scan_steps: int = 512,
                       width: float = 1e-12) -> list[float]:
    """Phase-transition exponents in (p_min, p_max), found by bisecting the
    sign changes of the boundary-comparison indicator."""
    lo = max(p_min, 1.0 + 1e-9)
    if p_max <= lo:
        return []
    ps = [lo + (p_max - lo) * k / scan_steps for k in range(scan_steps + 1)]
    values = [_indicator_at_p(p) for p in ps]
    found = []
    for (p1, v1), (p2, v2) in zip(zip(ps, values), zip(ps[1:], values[1:])):
        if v1 == 0.0:
            found.append(p1)
            continue
        if v1 * v2 < 0.0:
            a, fa, bnd = p1, v1, p2
            while bnd - a > width:
                mid = 0.5 * (a + bnd)
                fm = _indicator_at_p(mid)
                if fm == 0.0:
                    a = bnd = mid
                    break
                if fa * fm < 0.0:
                    bnd = mid
                else:
                    a, fa = mid, fm
            found.append(0.5 * (a + bnd))
    if values[-1] == 0.0:
        found.append(ps[-1])
    return found


def write_sweep_csv(path: str | Path, rows: list[SweepRow],
                    transitions: list[float] | None = None) -> None:
    lines = [SWEEP_HEADER]
    lines.extend(row.to_csv() for row in rows)
    if transitions:
        for p in transitions:
            lines.append(f"# transition p = {fmt(p)} (sign change of the regime indicator)")
    Path(path).write_text("\n".join(lines) + "\n")


def read_sweep_csv(path: str | Path) -> list[SweepRow]:
    rows = []
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#") or line == SWEEP_HEADER:
            continue
        p_text, phase, value, x0, family, count = line.split(",")
        rows.append(SweepRow(
            p=math.inf if p_text == "inf" else float(p_text),
            phase=phase,
            min_value=float(value),
            x0=None if x0 == "" else float(x0),
            family=family or None,
            line_count=count if count == "family" else int(count),
        ))
    return rows
