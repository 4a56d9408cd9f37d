"""
Closed forms for an atom decaying into the vacuum.

Populations relax as E = exp(−2Γτ) and coherences as exp(−Γτ). These are
transcriptions kept independent of the superoperator machinery so each can check
the other.
"""

import math

from src.config import IMPOSSIBLE_OUTCOME_FLOOR
from src.exceptions import ImpossibleOutcomeError, IncompatibleEnsembleError, InvalidParameterError
from src.qop_core.algebra import E, G, Operator2, zeros
from src.qop_core.models import PomElement

from .models import check_gamma_tau


def spont_prep_probs(gamma: float, tau: float) -> tuple[float, float]:
    """
    (P(e|g), P(g|g)) for an unbiased {e, g} source and a ground-state detection.

    Both share the normalization 2 − E.
    """
    check_gamma_tau(gamma, tau, "spont_prep_probs")
    decay = math.exp(-2.0 * gamma * tau)
    return (1.0 - decay) / (2.0 - decay), 1.0 / (2.0 - decay)


def spont_retro_elements(pom: PomElement, gamma: float, tau: float) -> Operator2:
    """Normalized retrodictive matrix for outcome ``pom`` after spontaneous decay."""
    check_gamma_tau(gamma, tau, "spont_retro_elements")
    decay = math.exp(-2.0 * gamma * tau)
    dephase = math.exp(-gamma * tau)
    p = pom.op

    out = zeros()
    out[E, E] = p[E, E] * decay + p[G, G] * (1.0 - decay)
    out[G, G] = p[G, G]
    out[E, G] = p[E, G] * dephase
    out[G, E] = p[G, E] * dephase

    normalization = (out[E, E] + out[G, G]).real
    if not normalization > IMPOSSIBLE_OUTCOME_FLOOR:
        raise ImpossibleOutcomeError(normalization)
    return out / normalization


def spont_retro_theta(theta: float, gamma: float, tau: float) -> Operator2:
    """
    Retrodictive matrix for a detection in |θ⟩ = cos(θ/2)|g⟩ + sin(θ/2)|e⟩.

    Unnormalized: ee = ½[1 + cosθ(1 − 2E)], gg = ½(1 + cosθ), both coherences
    ½ sinθ e^{−Γτ}, with normalization 1 + cosθ(1 − E).
    """
    check_gamma_tau(gamma, tau, "spont_retro_theta")
    c = math.cos(theta)
    s = math.sin(theta)
    half = _half_one_plus_cos(theta)
    decay = math.exp(-2.0 * gamma * tau)

    normalization = 2.0 * half - c * decay
    if not normalization > IMPOSSIBLE_OUTCOME_FLOOR:
        raise ImpossibleOutcomeError(normalization)

    out = zeros()
    out[E, E] = half - c * decay
    out[G, G] = half
    out[E, G] = out[G, E] = 0.5 * s * math.exp(-gamma * tau)
    return out / normalization


def _check_prior(p: float) -> None:
    if not (math.isfinite(p) and 0.0 <= p <= 1.0):
        raise InvalidParameterError("superposition_posterior", "p", p, "must lie in [0, 1]")


def _half_one_plus_cos(theta: float) -> float:
    """½(1 + cosθ), as cos²(θ/2) so it keeps its digits near θ = π."""
    return math.cos(0.5 * theta) ** 2


def _detection_weights(theta: float, gamma: float, tau: float) -> tuple[float, float]:
    """Tr[Φ(ρ̂)Π̂_θ] for ρ̂ = |e⟩⟨e| and ρ̂ = |+⟩⟨+|, each doubled."""
    c = math.cos(theta)
    half = _half_one_plus_cos(theta)
    decay = math.exp(-2.0 * gamma * tau)
    coherence = math.sin(theta) * math.exp(-gamma * tau)
    return 2.0 * (half - c * decay), 2.0 * half - c * decay + coherence


def superposition_posterior(
    theta: float, p: float, gamma: float, tau: float
) -> tuple[float, float]:
    """
    (P(e|θ), P(+|θ)) for the source {p|e⟩⟨e|, (1 − p)|+⟩⟨+|} and a detection in |θ⟩.

    At τ = 0 this is Bayes' theorem on the overlaps; for Γτ → ∞ it returns the
    priors (p, 1 − p).

    Raises:
        IncompatibleEnsembleError: neither preparation can produce |θ⟩
    """
    check_gamma_tau(gamma, tau, "superposition_posterior")
    _check_prior(p)
    excited_weight, plus_weight = _detection_weights(theta, gamma, tau)

    excited = p * excited_weight
    plus = (1.0 - p) * plus_weight
    denominator = excited + plus
    if not denominator > IMPOSSIBLE_OUTCOME_FLOOR:
        raise IncompatibleEnsembleError(denominator)
    return excited / denominator, plus / denominator


def superposition_plus_as_printed(theta: float, p: float, gamma: float, tau: float) -> float:
    """
    P(+|θ) with the coherence factor of the numerator written as exp(−2Γτ).

    Agrees with ``superposition_posterior`` only at τ = 0 and Γτ → ∞; kept for the
    transcription audit.
    """
    check_gamma_tau(gamma, tau, "superposition_plus_as_printed")
    _check_prior(p)
    excited_weight, plus_weight = _detection_weights(theta, gamma, tau)
    decay = math.exp(-2.0 * gamma * tau)

    denominator = p * excited_weight + (1.0 - p) * plus_weight
    if not denominator > IMPOSSIBLE_OUTCOME_FLOOR:
        raise IncompatibleEnsembleError(denominator)
    printed = 2.0 * _half_one_plus_cos(theta) - math.cos(theta) * decay + math.sin(theta) * decay
    return (1.0 - p) * printed / denominator
