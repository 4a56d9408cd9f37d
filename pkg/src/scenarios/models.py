"""
Data models for closed-form scenarios and figure data.
"""

import math
from typing import Any

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from src.exceptions import InvalidParameterError
from src.models.base import ChannelKind, CurveDirection, FigureId


def check_gamma_tau(gamma: float, tau: float, entity_type: str) -> None:
    """Shared precondition of every closed form: Γ > 0 and τ ≥ 0, both finite."""
    if not (math.isfinite(gamma) and gamma > 0):
        raise InvalidParameterError(entity_type, "gamma", gamma, "must be positive and finite")
    if not (math.isfinite(tau) and tau >= 0):
        raise InvalidParameterError(entity_type, "tau", tau, "must be non-negative and finite")


def check_tau_grid(tau_grid: Any, entity_type: str = "ScenarioCurve") -> list[float]:
    """Non-empty, finite, non-negative and strictly ascending."""
    grid = [float(t) for t in tau_grid]
    if not grid:
        raise InvalidParameterError(entity_type, "tau_grid", grid, "must not be empty")
    if not all(math.isfinite(t) and t >= 0 for t in grid):
        raise InvalidParameterError(
            entity_type, "tau_grid", grid[:5], "values must be finite and non-negative"
        )
    if any(later <= earlier for earlier, later in zip(grid, grid[1:])):
        raise InvalidParameterError(entity_type, "tau_grid", grid[:5], "must be strictly ascending")
    return grid


class ScenarioCurve(BaseModel):
    """Named real-valued series sampled on a τ grid."""

    model_config = ConfigDict(frozen=True)

    tau_grid: list[float]
    series: dict[str, list[float]]
    figure: FigureId | None = None

    @field_validator("tau_grid", mode="before")
    @classmethod
    def _validate_grid(cls, value: Any) -> list[float]:
        return check_tau_grid(value)

    @model_validator(mode="after")
    def _check_lengths(self) -> "ScenarioCurve":
        for name, values in self.series.items():
            if len(values) != len(self.tau_grid):
                raise InvalidParameterError(
                    "ScenarioCurve",
                    f"series[{name}]",
                    len(values),
                    f"expected {len(self.tau_grid)} values",
                )
        return self

    def columns(self) -> list[str]:
        return ["tau", *self.series]

    def rows(self) -> list[tuple[float, ...]]:
        names = list(self.series)
        return [
            (tau, *(self.series[name][index] for name in names))
            for index, tau in enumerate(self.tau_grid)
        ]

    def select(self, names: list[str]) -> "ScenarioCurve":
        """Copy keeping only ``names``, in that order."""
        missing = [name for name in names if name not in self.series]
        if missing:
            raise InvalidParameterError("ScenarioCurve", "series", missing, "not in curve")
        return ScenarioCurve(
            tau_grid=self.tau_grid,
            series={name: self.series[name] for name in names},
            figure=self.figure,
        )


class FigureSpec(BaseModel):
    """What one figure panel plots."""

    model_config = ConfigDict(frozen=True)

    kind: ChannelKind
    direction: CurveDirection
    state: str  # excited | sigma2_plus | steady_state
    series: list[str]
