"""
Data models for retrodiction results and preparation posteriors.
"""

import math

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.config import POSTERIOR_SUM_TOL
from src.exceptions import InvalidParameterError, NonPhysicalOperatorError
from src.models.base import Role
from src.qop_core.models import DensityMatrix


class RetrodictionResult(BaseModel):
    """Normalized retrodictive state plus the trace N of the unnormalized adjoint image."""

    model_config = ConfigDict(frozen=True)

    rho_retr: DensityMatrix
    normalization: float = Field(..., gt=0, allow_inf_nan=False)

    @model_validator(mode="after")
    def _check_role(self) -> "RetrodictionResult":
        if self.rho_retr.role != Role.RETRODICTIVE:
            raise InvalidParameterError(
                "RetrodictionResult",
                "rho_retr.role",
                self.rho_retr.role.value,
                "must be retrodictive",
            )
        return self


class PreparationPosterior(BaseModel):
    """Probabilities P(p|m) that each preparation event occurred, given outcome m."""

    model_config = ConfigDict(frozen=True)

    entries: list[tuple[str, float]]

    @model_validator(mode="after")
    def _check_distribution(self) -> "PreparationPosterior":
        if not self.entries:
            raise InvalidParameterError("PreparationPosterior", "entries", [], "must not be empty")
        for label, probability in self.entries:
            if not math.isfinite(probability) or not (
                -POSTERIOR_SUM_TOL <= probability <= 1.0 + POSTERIOR_SUM_TOL
            ):
                raise NonPhysicalOperatorError(
                    "PreparationPosterior", f"P({label}) = {probability!r} outside [0, 1]"
                )
        total = math.fsum(probability for _, probability in self.entries)
        if abs(total - 1.0) > POSTERIOR_SUM_TOL:
            raise NonPhysicalOperatorError(
                "PreparationPosterior", f"probabilities sum to {total!r}, not 1"
            )
        return self

    @property
    def labels(self) -> list[str]:
        return [label for label, _ in self.entries]

    def probability(self, label: str) -> float:
        for entry_label, probability in self.entries:
            if entry_label == label:
                return probability
        raise InvalidParameterError("PreparationPosterior", "label", label, "not in posterior")

    def as_dict(self) -> dict[str, float]:
        return dict(self.entries)

    def max_deviation(self, other: "PreparationPosterior") -> float:
        """Largest |ΔP| over the shared labels; label sets must match."""
        if sorted(self.labels) != sorted(other.labels):
            raise InvalidParameterError(
                "PreparationPosterior", "labels", other.labels, f"expected {self.labels}"
            )
        theirs = other.as_dict()
        return max(abs(probability - theirs[label]) for label, probability in self.entries)
