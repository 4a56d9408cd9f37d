"""
Tolerances and run configuration.

Physics tolerances live here as named constants so library code and tests share
one source of truth. Run-level settings are pydantic models with typed defaults.
"""

import os

from pydantic import BaseModel, Field

from src.exceptions import ConfigurationError

# Operator validation
HERMITICITY_TOL = 1e-12
PSD_TOL = 1e-12
TRACE_TOL = 1e-12
COMPLETENESS_TOL = 1e-10
BLOCH_NORM_TOL = 1e-10
ENSEMBLE_TRACE_TOL = 1e-10
POSTERIOR_SUM_TOL = 1e-10
UNITARITY_TOL = 1e-10

# Retrodiction
IMPOSSIBLE_OUTCOME_FLOOR = 1e-300

# Integration
TRACE_DRIFT_TOL = 1e-12
DEFAULT_RK4_STEPS = 10_000

# Below this |Ω|τ the Rabi terms use their Taylor series
SMALL_RABI_PHASE = 1e-4

TOL_OVERRIDE_ENV = "RETROATOM_TOL_OVERRIDE"


class CheckConfig(BaseModel):
    """Configuration for the self-check suite."""

    seed: int = 20_000
    random_cases: int = Field(100, ge=1)
    oracle_cases_per_channel: int = Field(50, ge=1)
    tau_zero_poms: int = Field(20, ge=1)
    rk4_steps: int = Field(DEFAULT_RK4_STEPS, ge=1)
    grid_points: int = Field(50, ge=2)

    # Γτ ranges sampled by the random suites
    retrodiction_gamma_tau_max: float = 4.0
    oracle_gamma_tau_max: float = 5.0
    long_gamma_tau: float = 30.0

    # Multiplies every tolerance below
    tolerance_scale: float = Field(1.0, gt=0)

    route_tol: float = 1e-10
    method_tol: float = 1e-12
    anchor_tol: float = 1e-12
    long_time_tol: float = 1e-8
    oracle_tol: float = 1e-6
    semigroup_tol: float = 1e-10
    channel_property_tol: float = 1e-10
    no_information_tol: float = 1e-6
    continuity_tol: float = 1e-4
    printed_form_tol: float = 1e-6

    def tol(self, name: str) -> float:
        """Return the named tolerance scaled by ``tolerance_scale``."""
        return float(getattr(self, name)) * self.tolerance_scale

    @classmethod
    def from_env(cls, **overrides: object) -> "CheckConfig":
        """Build a config, applying ``RETROATOM_TOL_OVERRIDE`` when set."""
        raw = os.environ.get(TOL_OVERRIDE_ENV)
        if raw is not None:
            try:
                scale = float(raw)
            except ValueError as exc:
                raise ConfigurationError(TOL_OVERRIDE_ENV, raw, "not a number") from exc
            if not scale > 0:
                raise ConfigurationError(TOL_OVERRIDE_ENV, raw, "must be positive")
            overrides.setdefault("tolerance_scale", scale)
        return cls.model_validate(overrides)


class FigureDefaults(BaseModel):
    """Default parameters and grids for figure data."""

    points: int = 200
    gamma: float = 1.0
    nbar: float = 1.0
    v: float = 4.0
    thermal_gamma_tau_max: float = 6.0
    driven_gamma_tau_max: float = 5.0


# Global default instances
check_config = CheckConfig()
figure_defaults = FigureDefaults()
