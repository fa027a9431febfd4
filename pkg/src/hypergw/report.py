"""Structured pass/fail records for the identity suites."""

from dataclasses import dataclass, field


@dataclass
class IdentityReport:
    identity: str
    parameters: dict = field(default_factory=dict)
    max_order_checked: int = 0
    passed: bool = True
    first_failure: str | None = None

    def to_dict(self):
        out = {
            "identity": self.identity,
            "parameters": dict(self.parameters),
            "max_order_checked": self.max_order_checked,
            "pass": self.passed,
        }
        if self.first_failure is not None:
            out["first_failure"] = self.first_failure
        return out

    def describe(self) -> str:
        params = " ".join(f"{k}={v}" for k, v in self.parameters.items())
        head = f"{self.identity}" + (f" [{params}]" if params else "")
        if self.passed:
            return f"{head}: pass (order {self.max_order_checked})"
        return f"{head}: FAIL at {self.first_failure}"


def report_equality(identity, parameters, pairs, max_order):
    """Build a report from (locus, lhs, rhs) triples compared exactly."""
    for locus, lhs, rhs in pairs:
        if lhs != rhs:
            return IdentityReport(
                identity,
                parameters,
                max_order,
                passed=False,
                first_failure=f"{locus}: {lhs!r} != {rhs!r}",
            )
    return IdentityReport(identity, parameters, max_order, passed=True)


def merge_reports(identity, parameters, reports, max_order):
    """Collapse sub-reports into one, keeping the first failure."""
    for rep in reports:
        if not rep.passed:
            return IdentityReport(
                identity,
                parameters,
                max_order,
                passed=False,
                first_failure=f"{rep.identity}: {rep.first_failure}",
            )
    return IdentityReport(identity, parameters, max_order, passed=True)
