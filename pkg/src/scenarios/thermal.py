"""
Closed forms for an atom in a thermal field of mean occupation n̄.
"""

import math

from src.config import IMPOSSIBLE_OUTCOME_FLOOR
from src.exceptions import ImpossibleOutcomeError, InvalidParameterError
from src.qop_core.algebra import E, G, Operator2, zeros
from src.qop_core.models import PomElement

from .models import check_gamma_tau


def _check_nbar(nbar: float, entity_type: str) -> None:
    if not (math.isfinite(nbar) and nbar >= 0):
        raise InvalidParameterError(entity_type, "nbar", nbar, "must be non-negative and finite")


def _thermal_weights(gamma: float, nbar: float, tau: float) -> tuple[float, float, float, float]:
    """(n̄/(2n̄+1), (n̄+1)/(2n̄+1), population factor, coherence factor)."""
    total = 2.0 * nbar + 1.0
    return (
        nbar / total,
        (nbar + 1.0) / total,
        math.exp(-2.0 * gamma * total * tau),
        math.exp(-gamma * total * tau),
    )


def thermal_retro_elements(pom: PomElement, gamma: float, nbar: float, tau: float) -> Operator2:
    """
    Normalized retrodictive matrix for outcome ``pom`` in a thermal field.

    Tends to 1̂/2 for every outcome as Γτ → ∞ when n̄ > 0.
    """
    check_gamma_tau(gamma, tau, "thermal_retro_elements")
    _check_nbar(nbar, "thermal_retro_elements")
    up, down, relax, dephase = _thermal_weights(gamma, nbar, tau)
    p = pom.op

    out = zeros()
    out[E, E] = p[E, E] * (up + down * relax) + p[G, G] * down * (1.0 - relax)
    out[G, G] = p[G, G] * (down + up * relax) + p[E, E] * up * (1.0 - relax)
    out[E, G] = p[E, G] * dephase
    out[G, E] = p[G, E] * dephase

    normalization = (
        p[E, E].real * (2.0 * up + relax / (2.0 * nbar + 1.0))
        + p[G, G].real * (2.0 * down - relax / (2.0 * nbar + 1.0))
    )
    if not normalization > IMPOSSIBLE_OUTCOME_FLOOR:
        raise ImpossibleOutcomeError(normalization)
    return out / normalization


def thermal_excited_population(p_e0: float, gamma: float, nbar: float, tau: float) -> float:
    """
    Predictive ⟨e|ρ̂(τ)|e⟩ for an initial excited population ``p_e0``.

    Relaxes to n̄/(2n̄+1), i.e. an excited-to-ground ratio of n̄/(n̄+1).
    """
    check_gamma_tau(gamma, tau, "thermal_excited_population")
    _check_nbar(nbar, "thermal_excited_population")
    if not (math.isfinite(p_e0) and 0.0 <= p_e0 <= 1.0):
        raise InvalidParameterError(
            "thermal_excited_population", "p_e0", p_e0, "must lie in [0, 1]"
        )
    up, down, relax, _ = _thermal_weights(gamma, nbar, tau)
    return p_e0 * (up + down * relax) + (1.0 - p_e0) * up * (1.0 - relax)
