"""
Data models for the self-check suite.
"""

from pydantic import BaseModel, ConfigDict, Field


class CheckResult(BaseModel):
    """Outcome of one oracle-grounded invariant."""

    model_config = ConfigDict(frozen=True)

    name: str
    passed: bool
    measured: float  # Largest deviation seen; inf when the check raised
    tolerance: float
    cases: int = Field(0, ge=0)
    detail: str = ""


class AuditFinding(BaseModel):
    """Comparison of a printed closed form against the generator-exponential oracle."""

    model_config = ConfigDict(frozen=True)

    name: str
    matches: bool
    max_deviation: float
    tolerance: float
    detail: str = ""


class CheckReport(BaseModel):
    """Everything ``retroatom check`` reports. Only ``results`` decide the exit code."""

    model_config = ConfigDict(frozen=True)

    results: list[CheckResult]
    findings: list[AuditFinding] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)

    @property
    def failed_names(self) -> list[str]:
        return [result.name for result in self.results if not result.passed]

    @property
    def discrepancies(self) -> list[AuditFinding]:
        return [finding for finding in self.findings if not finding.matches]
