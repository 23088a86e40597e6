"""Exhaustive census of complexes over a small prime field.

For tiny dimension vectors every differential with D^2 = 0 over F_p can
be listed.  The census checks the structure theory at set level: every
rank vector that occurs satisfies the poset inequalities, every poset
element is realized, and each rank class is a single group orbit (grown
from the canonical representative by closure under elementary moves).
"""

from varcom import GradedDims, enumerate_R
from varcom.suites import exhaustive_field_census

for dims, p in [((1, 1), 2), ((1, 1, 1), 2), ((1, 2, 1), 2), ((2, 2), 2),
                ((1, 1, 1), 3), ((2, 2), 3)]:
    report = exhaustive_field_census(dims, p)
    R = enumerate_R(GradedDims(dims))
    status = "OK" if report.passed else "FAILED"
    print(f"dims {dims} over F_{p}: {report.cases} points of the variety, "
          f"{len(R)} strata, orbits == rank classes: {status}")
    if not report.passed:
        for f in report.failures:
            print("   ", f)

print("\nthe same census, as a replayable JSON report:")
print(exhaustive_field_census((1, 1, 1), 2).to_json())
