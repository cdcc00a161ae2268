"""Uniform record for checked inequalities.

Every verified inequality is normalized to the form LHS <= RHS.  Float
evaluations whose slack falls below NEAR_VIOLATION trigger an automatic
high-precision recomputation (when the caller supplies one) instead of an
immediate failure, separating numerical noise from genuine violations.
"""

from __future__ import annotations

from dataclasses import dataclass, field

NEAR_VIOLATION = 1e-9
RECHECK_EPS = 1e-40  # equality cases re-evaluated at 50 digits wobble below this


@dataclass
class BoundReport:
    name: str
    lhs: float
    rhs: float
    passed: bool
    rechecked: bool = False
    details: dict = field(default_factory=dict)

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tag = " (exact recheck)" if self.rechecked else ""
        return (f"[{status}] {self.name}: lhs={self.lhs:.6g} "
                f"rhs={self.rhs:.6g} slack={self.slack:.3g}{tag}")


def check_bound(name: str, lhs, rhs, recheck=None, details=None) -> BoundReport:
    """Build a report for LHS <= RHS, rechecking near-violations exactly.

    `recheck`, when given, is a zero-argument callable returning the pair
    (lhs, rhs) recomputed in exact or high-precision arithmetic; it is
    consulted whenever the float slack falls under NEAR_VIOLATION.
    """
    lhs_f, rhs_f = float(lhs), float(rhs)
    slack = rhs_f - lhs_f
    rechecked = False
    passed = slack >= 0
    if slack < NEAR_VIOLATION and recheck is not None:
        exact_lhs, exact_rhs = recheck()
        # exact rationals compare exactly; high-precision floats get an
        # epsilon so that genuine equality cases do not flip on roundoff
        passed = (exact_rhs - exact_lhs) >= -RECHECK_EPS
        rechecked = True
    return BoundReport(name, lhs_f, rhs_f, passed, rechecked, details or {})
