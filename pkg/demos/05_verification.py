"""Seeded property suites: the same seed always gives the same report."""

from __future__ import annotations

from tcbeta import verify as vf

reports = vf.run_all(trials=200, seed=42)
for r in reports:
    status = "ok" if r.passed else "FAIL"
    print(f"{r.suite:20s} {status:4s} checks={r.checks:6d} max_deviation={r.max_deviation:.2e}")

again = vf.reports_json(vf.run_all(trials=200, seed=42))
print("reproducible:", again == vf.reports_json(reports))
print("fixtures:", len(vf.adversarial_fixtures()))
