"""
Data models for atom–field channels.
"""

from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from src.exceptions import InvalidParameterError
from src.models.base import ChannelKind


class ChannelParams(BaseModel):
    """Physical parameters selecting one channel and an evolution interval."""

    model_config = ConfigDict(frozen=True)

    kind: ChannelKind
    gamma: float = Field(..., gt=0, allow_inf_nan=False)  # Half the Einstein A-coefficient
    nbar: float = Field(0.0, ge=0, allow_inf_nan=False)  # Thermal only
    v: float = Field(0.0, ge=0, allow_inf_nan=False)  # Driven only
    tau: float = Field(0.0, ge=0, allow_inf_nan=False)  # t_m - t_p

    @property
    def effective_nbar(self) -> float:
        return self.nbar if self.kind == ChannelKind.THERMAL else 0.0

    @property
    def effective_v(self) -> float:
        return self.v if self.kind == ChannelKind.DRIVEN else 0.0

    @property
    def omega_squared(self) -> float:
        """Ω² = V² − Γ²/4; negative in the overdamped regime."""
        return self.effective_v**2 - self.gamma**2 / 4

    @property
    def gamma_tau(self) -> float:
        return self.gamma * self.tau

    def at_tau(self, tau: float) -> "ChannelParams":
        """Same channel over a different interval."""
        return ChannelParams(kind=self.kind, gamma=self.gamma, nbar=self.nbar, v=self.v, tau=tau)


class Superoperator(BaseModel):
    """
    Linear map on 2×2 operators.

    ``matrix`` acts on row-major vectorized operators, order (ee, eg, ge, gg).
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    matrix: np.ndarray

    @field_validator("matrix", mode="before")
    @classmethod
    def _coerce_matrix(cls, value: Any) -> np.ndarray:
        matrix = np.array(value, dtype=np.complex128)
        if matrix.shape != (4, 4):
            raise InvalidParameterError(
                "Superoperator", "matrix", matrix.shape, "expected shape (4, 4)"
            )
        if not np.all(np.isfinite(matrix)):
            raise InvalidParameterError(
                "Superoperator", "matrix", "non-finite", "entries must be finite"
            )
        matrix.flags.writeable = False
        return matrix
