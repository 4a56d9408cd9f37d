"""
Named POM and ensemble presets accepted by ``--pom``, ``--state`` and ``--ensemble``.

Any value starting with ``{`` is parsed as inline JSON instead.
"""

import json
import math

from src.channels.models import ChannelParams
from src.exceptions import InvalidParameterError, NonPhysicalOperatorError
from src.models.base import ChannelKind
from src.qop_core.algebra import E, G, Operator2, identity, pauli, zeros
from src.qop_core.codec import operator_from_json
from src.qop_core.models import PomElement, PreparationEnsemble
from src.qop_core.states import (
    bloch_operator,
    eg_pom_set,
    excited_projector,
    ground_projector,
    plus_projector,
    projector_theta,
    unbiased_ensemble,
)
from src.scenarios.driven import driven_steady_state

POM_PRESETS = (
    "excited",
    "ground",
    "plus",
    "sigma2-plus",
    "theta:<radians>",
    "steady-state",
    "identity",
)
ENSEMBLE_PRESETS = ("unbiased-eg", "biased-e-plus:<p>")


def _parse_float(text: str, entity_type: str, field: str) -> float:
    try:
        value = float(text)
    except ValueError as exc:
        raise InvalidParameterError(entity_type, field, text, "not a number") from exc
    if not math.isfinite(value):
        raise InvalidParameterError(entity_type, field, text, "must be finite")
    return value


def _rejected(
    entity_type: str, source: str, exc: NonPhysicalOperatorError
) -> InvalidParameterError:
    """An inline operator that fails validation is bad input."""
    return InvalidParameterError(entity_type, "json", source, exc.message, exc.details)


def steady_state_operator(params: ChannelParams) -> Operator2:
    """Fixed point of the channel selected by ``params``."""
    if params.kind == ChannelKind.DRIVEN:
        return bloch_operator(driven_steady_state(params.gamma, params.effective_v))
    nbar = params.effective_nbar
    total = 2.0 * nbar + 1.0
    out = zeros()
    out[E, E] = nbar / total
    out[G, G] = (nbar + 1.0) / total
    return out


def parse_pom(source: str, params: ChannelParams) -> PomElement:
    """
    Resolve a POM preset name or inline JSON operator.

    ``steady-state`` depends on the channel, hence ``params``.

    Raises:
        InvalidParameterError: unknown preset, malformed JSON, or an operator that is
            not positive semi-definite
    """
    source = source.strip()
    if source.startswith("{"):
        try:
            return PomElement(op=operator_from_json(source), label="json")
        except NonPhysicalOperatorError as exc:
            raise _rejected("pom", source, exc) from exc
    if source.startswith("theta:"):
        theta = _parse_float(source.removeprefix("theta:"), "pom", "theta")
        return projector_theta(theta, label=source)

    if source == "excited":
        op = excited_projector()
    elif source == "ground":
        op = ground_projector()
    elif source == "plus":
        op = plus_projector()
    elif source == "sigma2-plus":
        # (|e⟩ + i|g⟩)/√2
        op = 0.5 * (identity() + pauli(2))
    elif source == "steady-state":
        op = steady_state_operator(params)
    elif source == "identity":
        op = identity()
    else:
        raise InvalidParameterError(
            "pom", "preset", source, f"expected one of {list(POM_PRESETS)} or a JSON operator"
        )
    return PomElement(op=op, label=source)


def parse_ensemble(source: str) -> PreparationEnsemble:
    """
    Resolve an ensemble preset name or an inline JSON mapping ``{label: operator}``.

    Raises:
        InvalidParameterError: unknown preset, bad prior, malformed JSON, or weights
            that are not PSD or do not sum to one
    """
    source = source.strip()
    if source.startswith("{"):
        try:
            mapping = json.loads(source)
        except json.JSONDecodeError as exc:
            raise InvalidParameterError("ensemble", "json", source, f"invalid JSON: {exc}") from exc
        if not isinstance(mapping, dict) or not mapping:
            raise InvalidParameterError(
                "ensemble", "json", source, "expected a non-empty object of operators"
            )
        try:
            return PreparationEnsemble(
                items=[(label, operator_from_json(op)) for label, op in mapping.items()]
            )
        except NonPhysicalOperatorError as exc:
            raise _rejected("ensemble", source, exc) from exc

    if source == "unbiased-eg":
        return unbiased_ensemble(eg_pom_set())
    if source.startswith("biased-e-plus:"):
        p = _parse_float(source.removeprefix("biased-e-plus:"), "ensemble", "p")
        if not 0.0 <= p <= 1.0:
            raise InvalidParameterError("ensemble", "p", p, "must lie in [0, 1]")
        return PreparationEnsemble(
            items=[("e", p * excited_projector()), ("plus", (1.0 - p) * plus_projector())]
        )
    raise InvalidParameterError(
        "ensemble", "preset", source, f"expected one of {list(ENSEMBLE_PRESETS)} or a JSON object"
    )
