"""
Closed forms for a resonantly driven atom with spontaneous decay.

All forms share D = V² + 2Γ² and the Rabi terms (cos Ωτ, sin(Ωτ)/Ω) times the
envelope exp(−3Γτ/2), taken from ``damped_rabi_terms`` so they stay real and
finite for Ω² ≤ 0. They are transcribed as printed; the generator exponential in
``src.channels`` is the reference they are audited against.
"""

import math

from src.channels.rabi import damped_rabi_terms
from src.exceptions import InvalidParameterError
from src.qop_core.algebra import E, G, Operator2, zeros
from src.qop_core.models import BlochVector

from .models import check_gamma_tau


def _check_drive(v: float, entity_type: str) -> None:
    if not (math.isfinite(v) and v >= 0):
        raise InvalidParameterError(entity_type, "v", v, "must be non-negative and finite")


def _common(
    gamma: float, v: float, tau: float, entity_type: str
) -> tuple[float, float, float]:
    """(D, e^{−3Γτ/2} cos Ωτ, e^{−3Γτ/2} sin(Ωτ)/Ω)."""
    check_gamma_tau(gamma, tau, entity_type)
    _check_drive(v, entity_type)
    cos_term, sinc_term = damped_rabi_terms(gamma, v, tau)
    return v * v + 2.0 * gamma * gamma, cos_term, sinc_term


def driven_steady_state(gamma: float, v: float) -> BlochVector:
    """Bloch vector (0, 2ΓV/D, −2Γ²/D) approached for Γτ → ∞."""
    check_gamma_tau(gamma, 0.0, "driven_steady_state")
    _check_drive(v, "driven_steady_state")
    d = v * v + 2.0 * gamma * gamma
    return BlochVector(u=0.0, v=2.0 * gamma * v / d, w=-2.0 * gamma * gamma / d)


def driven_bloch(b0: BlochVector, gamma: float, v: float, tau: float) -> BlochVector:
    """Damped Rabi solution for the Bloch vector, from ``b0`` at τ = 0."""
    d, c, s = _common(gamma, v, tau, "driven_bloch")
    g2 = gamma * gamma

    u = b0.u * math.exp(-gamma * tau)
    v_tau = (
        2.0 * gamma * v
        + (d * b0.v - 2.0 * gamma * v) * c
        + (-3.0 * g2 * v + d * (-v * b0.w + 0.5 * gamma * b0.v)) * s
    ) / d
    w_tau = (
        -2.0 * g2
        + (2.0 * g2 + d * b0.w) * c
        + (-2.0 * gamma * (v * v + 0.5 * g2) + d * (v * b0.v - 0.5 * gamma * b0.w)) * s
    ) / d
    return BlochVector(u=u, v=v_tau, w=w_tau)


def _normalized(out: Operator2) -> Operator2:
    return out / (out[E, E] + out[G, G]).real


def driven_retro_excited(gamma: float, v: float, tau: float) -> Operator2:
    """Normalized retrodictive matrix for a detection in |e⟩."""
    d, c, s = _common(gamma, v, tau, "driven_retro_excited")
    v2 = v * v
    g2 = gamma * gamma

    out = zeros()
    oscillation = (v2 + 4.0 * g2) * c - 0.5 * gamma * (5.0 * v2 + 4.0 * g2) * s
    out[E, E] = (v2 + oscillation) / (2.0 * d)
    out[G, G] = v2 / (2.0 * d) * (1.0 - (c + 1.5 * gamma * s))
    out[E, G] = -0.5j * v * s
    out[G, E] = -out[E, G]
    return _normalized(out)


def driven_retro_sigma2(gamma: float, v: float, tau: float) -> Operator2:
    """Normalized retrodictive matrix for a detection in (|e⟩ + i|g⟩)/√2."""
    d, c, s = _common(gamma, v, tau, "driven_retro_sigma2")
    v2 = v * v
    g2 = gamma * gamma
    drift = 2.0 * gamma * v

    out = zeros()
    out[E, E] = 0.5 * (1.0 + (drift - (drift * c + v * (v2 + 5.0 * g2) * s)) / d)
    out[G, G] = 0.5 * (1.0 + (drift - (drift * c + v * (g2 - v2) * s)) / d)
    out[E, G] = -0.5j * (c + 0.5 * gamma * s)
    out[G, E] = -out[E, G]
    return _normalized(out)


def driven_retro_sigma1(gamma: float, v: float, tau: float) -> Operator2:
    """
    Normalized retrodictive matrix for a detection in (|e⟩ + |g⟩)/√2.

    Diagonals stay at ½; the real coherences decay as ½e^{−Γτ}.
    """
    check_gamma_tau(gamma, tau, "driven_retro_sigma1")
    _check_drive(v, "driven_retro_sigma1")
    coherence = 0.5 * math.exp(-gamma * tau)

    out = zeros()
    out[E, E] = out[G, G] = 0.5
    out[E, G] = out[G, E] = coherence
    return out
