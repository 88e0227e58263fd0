"""Cross-checks tying the analytic triangle solution to the generic solvers.

These complement the series-based suite in :mod:`lpline.verification`; the
verify subcommand runs both.
"""

from __future__ import annotations

import math

import numpy as np

from .fileio import locate_transitions
from .geometry import lp_objective
from .numeric import minimize
from .triangle import (
    SQRT3,
    ReducedPoint,
    canonical_triangle,
    family_member,
    reduced_objective,
    reduced_to_line,
    side_parallel_value,
    triangle_min_value,
)
from .verification import CheckResult

__all__ = ["triangle_cross_checks"]


def _consistency_check(rng: np.random.Generator, samples: int) -> CheckResult:
    worst = 0.0
    worst_at = None
    tri = canonical_triangle()
    for _ in range(samples):
        x = rng.uniform(1e-3, SQRT3 / 4.0 - 1e-3)
        y = rng.uniform(0.0, x)
        p = rng.uniform(1.05, 5.0)
        r = ReducedPoint(x, y)
        direct = lp_objective(tri, reduced_to_line(r), p)
        reduced = reduced_objective(r, p)
        rel = abs(direct - reduced) / (1.0 + abs(reduced))
        if rel > worst:
            worst, worst_at = rel, p
    status = "pass" if worst <= 1e-12 else "fail"
    return CheckResult("reduced-objective-consistency", status, worst, worst_at,
                       note="max relative gap between reduced and direct objectives")


def _family_constancy_check(p, label: str, samples: int) -> CheckResult:
    ys = np.linspace(0.0, SQRT3 / 6.0, samples)
    values = [reduced_objective(family_member(p, float(y)), p) for y in ys]
    spread = max(values) - min(values)
    status = "pass" if spread <= 1e-12 else "fail"
    return CheckResult(f"family-constancy[{label}]", status, spread,
                       note="value spread along the optimal family")


def _minimize_check(p: float) -> CheckResult:
    report = minimize(canonical_triangle(), p)
    gap = abs(report.optimal.min_value - triangle_min_value(p))
    status = "pass" if gap <= 1e-8 else "fail"
    return CheckResult(f"minimize-matches-closed-form[p={p:g}]", status, gap,
                       note="numeric minimum vs analytic value")


def _transition_check() -> CheckResult:
    found = locate_transitions(1.01, 3.0)
    targets = (4.0 / 3.0, 2.0)
    if len(found) != 2:
        return CheckResult("transition-location", "fail", math.nan,
                           note=f"expected 2 transitions, found {len(found)}")
    gap = max(abs(a - b) for a, b in zip(sorted(found), targets))
    status = "pass" if gap <= 1e-10 else "fail"
    return CheckResult("transition-location", status, gap,
                       note="distance of located transitions from 4/3 and 2")


def _trichotomy_check() -> CheckResult:
    ps = np.linspace(1.0125, 6.0, 400)
    worst = math.inf
    worst_at = None
    ok = True
    for p in ps:
        p = float(p)
        diff = side_parallel_value(p) - 2.0 ** (1.0 - p)
        if abs(p - 2.0) < 1e-12 or abs(p - 4.0 / 3.0) < 1e-12:
            ok = ok and abs(diff) < 1e-14  # exact tie at the transitions
            continue
        if 4.0 / 3.0 < p < 2.0:
            margin = diff  # bisector regime: side-parallel must lose
        else:
            margin = -diff  # side-parallel regime: it must win
        if margin < worst:
            worst, worst_at = margin, p
    status = "pass" if ok and worst > 0.0 else "fail"
    return CheckResult("boundary-trichotomy", status, worst, worst_at,
                       note="signed gap between the two boundary minima")


def triangle_cross_checks(quick: bool = False, seed: int = 20240817) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    checks = [
        _consistency_check(rng, 100 if quick else 500),
        _family_constancy_check(2.0, "p=2", 100),
        _family_constancy_check(4.0 / 3.0, "p=4/3", 100),
        _transition_check(),
        _trichotomy_check(),
    ]
    for p in ((1.5, 3.0) if quick else (1.1, 1.25, 1.5, 1.9, 2.5, 4.0, 8.0)):
        checks.append(_minimize_check(p))
    return checks
