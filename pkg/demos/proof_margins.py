"""
Numeric certification margins
=============================

The analytic core rests on the interior critical-point condition having no
zeros in (0, 1) except at b = 1/(p-1) in {1, 3}.  This script runs the numeric
verification battery over the default grids and shows where each check is
tightest.
"""

from collections import defaultdict

from lpline.verification import run_verification_suite

report = run_verification_suite()

print(f"suite: {'PASS' if report.ok else 'FAIL'} "
      f"({len(report.checks)} checks, {len(report.inconclusive)} inconclusive)")

groups = defaultdict(list)
for check in report.checks:
    groups[check.name.split("[")[0]].append(check)

for kind, checks in groups.items():
    worst = min(checks, key=lambda c: c.margin)
    print(f"\n{kind}: {len(checks)} checks")
    print(f"  tightest margin {worst.margin:.6e} at {worst.name}"
          + (f", t = {worst.worst_at:.6f}" if worst.worst_at is not None else ""))
    for c in checks:
        if c.status != "pass":
            print(f"  !! {c.name}: {c.status} ({c.note})")
