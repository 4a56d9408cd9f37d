"""
Validated quantum-mechanical domain types.

All models are frozen and store read-only arrays, so instances can be shared
freely between threads.
"""

import math
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from src.config import (
    BLOCH_NORM_TOL,
    COMPLETENESS_TOL,
    ENSEMBLE_TRACE_TOL,
    HERMITICITY_TOL,
    PSD_TOL,
    TRACE_TOL,
)
from src.exceptions import InvalidParameterError, NonPhysicalOperatorError
from src.models.base import Role

from .algebra import (
    Operator2,
    as_operator,
    dagger,
    eigenvalues_hermitian,
    frozen,
    identity,
    max_abs,
    trace,
)


def _check_hermitian_psd(op: Operator2, entity_type: str) -> None:
    deviation = max_abs(op - dagger(op))
    if deviation > HERMITICITY_TOL:
        raise NonPhysicalOperatorError(
            entity_type, f"not Hermitian (deviation {deviation:.3e})", {"deviation": deviation}
        )
    lowest = eigenvalues_hermitian(op)[0]
    if lowest < -PSD_TOL:
        raise NonPhysicalOperatorError(
            entity_type,
            f"not positive semi-definite (eigenvalue {lowest:.3e})",
            {"eigenvalue": lowest},
        )


class _OperatorModel(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    op: np.ndarray

    @field_validator("op", mode="before")
    @classmethod
    def _coerce_op(cls, value: Any) -> Operator2:
        return frozen(as_operator(value, cls.__name__))


class DensityMatrix(_OperatorModel):
    """Hermitian, unit-trace, positive semi-definite operator tagged with its role."""

    role: Role = Role.PREDICTIVE

    @model_validator(mode="after")
    def _check_physical(self) -> "DensityMatrix":
        _check_hermitian_psd(self.op, "DensityMatrix")
        tr = trace(self.op).real
        if abs(tr - 1.0) > TRACE_TOL:
            raise NonPhysicalOperatorError(
                "DensityMatrix", f"trace {tr!r} differs from 1", {"trace": tr}
            )
        return self

    def element(self, bra: int, ket: int) -> complex:
        """⟨bra|ρ̂|ket⟩ with 0 = e and 1 = g."""
        return complex(self.op[bra, ket])


class PomElement(_OperatorModel):
    """Positive semi-definite operator attached to one measurement or preparation outcome."""

    label: str = ""

    @model_validator(mode="after")
    def _check_physical(self) -> "PomElement":
        _check_hermitian_psd(self.op, "PomElement")
        return self

    def scaled(self, factor: float) -> "PomElement":
        if not factor > 0:
            raise InvalidParameterError("PomElement", "factor", factor, "must be positive")
        return PomElement(op=factor * self.op, label=self.label)


class PomSet(BaseModel):
    """Complete set of POM elements: Σ_m Π̂_m = 1̂."""

    model_config = ConfigDict(frozen=True)

    elements: list[PomElement]

    @model_validator(mode="after")
    def _check_complete(self) -> "PomSet":
        if not self.elements:
            raise InvalidParameterError("PomSet", "elements", [], "must not be empty")
        labels = [element.label for element in self.elements]
        if len(set(labels)) != len(labels):
            raise InvalidParameterError("PomSet", "labels", labels, "labels must be unique")
        total = sum((element.op for element in self.elements), np.zeros((2, 2), complex))
        deviation = max_abs(total - identity())
        if deviation > COMPLETENESS_TOL:
            raise NonPhysicalOperatorError(
                "PomSet", f"elements do not sum to identity (deviation {deviation:.3e})"
            )
        return self

    @property
    def labels(self) -> list[str]:
        return [element.label for element in self.elements]


class PreparationEnsemble(BaseModel):
    """Weighted preparation operators Λ̂_p = P(p)·ρ̂_p summing to the a priori state."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    items: list[tuple[str, np.ndarray]]

    @field_validator("items", mode="before")
    @classmethod
    def _coerce_items(cls, value: Any) -> list[tuple[str, Operator2]]:
        if isinstance(value, dict):
            value = list(value.items())
        return [
            (str(label), frozen(as_operator(op, "PreparationEnsemble"))) for label, op in value
        ]

    @model_validator(mode="after")
    def _check_ensemble(self) -> "PreparationEnsemble":
        if not self.items:
            raise InvalidParameterError("PreparationEnsemble", "items", [], "must not be empty")
        labels = self.labels
        if len(set(labels)) != len(labels):
            raise InvalidParameterError(
                "PreparationEnsemble", "labels", labels, "labels must be unique"
            )
        for _, lambda_op in self.items:
            _check_hermitian_psd(lambda_op, "PreparationEnsemble")
        total = sum(trace(lambda_op).real for _, lambda_op in self.items)
        if abs(total - 1.0) > ENSEMBLE_TRACE_TOL:
            raise NonPhysicalOperatorError(
                "PreparationEnsemble", f"prior weights sum to {total!r}, not 1"
            )
        return self

    @property
    def labels(self) -> list[str]:
        return [label for label, _ in self.items]

    def prior(self, label: str) -> float:
        """A priori probability Tr Λ̂_p of one preparation."""
        for item_label, lambda_op in self.items:
            if item_label == label:
                return trace(lambda_op).real
        raise InvalidParameterError("PreparationEnsemble", "label", label, "not in ensemble")


class BlochVector(BaseModel):
    """Expectation values (u, v, w) of σ̂₁, σ̂₂, σ̂₃."""

    model_config = ConfigDict(frozen=True)

    u: float
    v: float
    w: float

    @model_validator(mode="after")
    def _check_finite(self) -> "BlochVector":
        if not all(math.isfinite(x) for x in (self.u, self.v, self.w)):
            raise InvalidParameterError(
                "BlochVector", "components", (self.u, self.v, self.w), "must be finite"
            )
        return self

    @property
    def norm(self) -> float:
        return math.sqrt(self.u**2 + self.v**2 + self.w**2)

    @property
    def is_physical(self) -> bool:
        return self.norm <= 1.0 + BLOCH_NORM_TOL

    def as_array(self) -> np.ndarray:
        return np.array([self.u, self.v, self.w])
