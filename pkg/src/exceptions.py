"""Domain exceptions for retroatom.

Every error carries a human-readable message plus a ``details`` dict so the CLI
and the check suite can report structured context.
"""

from typing import Any

# Type alias for dictionaries with string keys
Details = dict[str, Any]


class RetroAtomError(Exception):
    """Base exception for all retroatom errors."""

    def __init__(self, message: str, details: Details | None = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}


class InvalidParameterError(RetroAtomError):
    """Raised when an input value is malformed or out of range."""

    def __init__(
        self,
        entity_type: str,
        field: str,
        value: Any,
        reason: str,
        details: Details | None = None,
    ):
        message = f"Invalid {entity_type}.{field}={value!r}: {reason}"
        super().__init__(message, details)
        self.entity_type = entity_type
        self.field = field
        self.value = value
        self.reason = reason


class NonPhysicalOperatorError(RetroAtomError):
    """Raised when an operator violates Hermiticity, positivity or normalization."""

    def __init__(self, entity_type: str, reason: str, details: Details | None = None):
        message = f"non-physical operator ({entity_type}): {reason}"
        super().__init__(message, details)
        self.entity_type = entity_type
        self.reason = reason


class UnnormalizableError(RetroAtomError):
    """Raised when an operator with non-positive trace is normalized."""

    def __init__(self, trace: float, details: Details | None = None):
        super().__init__(f"unnormalizable: trace {trace:.3e} is not positive", details)
        self.trace = trace


class NonUnitaryError(RetroAtomError):
    """Raised when closed-system retrodiction is given a non-unitary evolution."""

    def __init__(self, deviation: float, details: Details | None = None):
        super().__init__(f"evolution operator is not unitary: |U†U - 1| = {deviation:.3e}", details)
        self.deviation = deviation


class ImpossibleOutcomeError(RetroAtomError):
    """Raised when a measurement outcome has zero probability for every preparation."""

    def __init__(self, normalization: float, details: Details | None = None):
        super().__init__(
            f"impossible outcome: retrodictive normalization {normalization:.3e} vanishes",
            details,
        )
        self.normalization = normalization


class IncompatibleEnsembleError(RetroAtomError):
    """Raised when no preparation in the ensemble can produce the measured outcome."""

    def __init__(self, total: float, details: Details | None = None):
        super().__init__(
            f"measurement incompatible with ensemble: total overlap {total:.3e}", details
        )
        self.total = total


class UnknownFigureError(RetroAtomError):
    """Raised when a figure id is not in the registry."""

    def __init__(self, figure_id: str, details: Details | None = None):
        super().__init__(f"unknown figure id '{figure_id}'", details)
        self.figure_id = figure_id


class IntegrationCancelledError(RetroAtomError):
    """Raised when an RK4 integration is cancelled at a step boundary."""

    def __init__(self, step: int, steps: int, details: Details | None = None):
        super().__init__(f"integration cancelled after {step}/{steps} steps", details)
        self.step = step
        self.steps = steps


class ConfigurationError(RetroAtomError):
    """Raised when a setting, environment override or option is unusable."""

    def __init__(self, setting: str, value: Any, reason: str, details: Details | None = None):
        super().__init__(f"Configuration {setting}={value!r}: {reason}", details)
        self.setting = setting
        self.value = value
        self.reason = reason
