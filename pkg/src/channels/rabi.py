"""
Rabi-frequency terms for the resonantly driven atom.

Ω = (V² − Γ²/4)^{1/2} is imaginary for V < Γ/2. The closed-form solutions only
ever need cos(Ωτ) and sin(Ωτ)/Ω, which are even in Ω and therefore real-analytic
in Ω²; they are continued to cosh and sinh/|Ω| below the critical drive.
"""

import math

from src.config import SMALL_RABI_PHASE


def rabi_terms(gamma: float, v: float, tau: float) -> tuple[float, float]:
    """
    Return ``(cos(Ωτ), sin(Ωτ)/Ω)`` for drive ``v`` and decay rate ``gamma``.

    Uses a Taylor series in (Ωτ)² when |Ω|τ < SMALL_RABI_PHASE, so the result is
    continuous through the critically damped point V = Γ/2.
    """
    omega_sq = v * v - gamma * gamma / 4
    phase_sq = omega_sq * tau * tau

    if abs(phase_sq) < SMALL_RABI_PHASE**2:
        cos_term = 1.0 - phase_sq / 2 + phase_sq**2 / 24
        sinc_term = tau * (1.0 - phase_sq / 6 + phase_sq**2 / 120)
        return cos_term, sinc_term

    if omega_sq > 0:
        omega = math.sqrt(omega_sq)
        return math.cos(omega * tau), math.sin(omega * tau) / omega

    kappa = math.sqrt(-omega_sq)
    return math.cosh(kappa * tau), math.sinh(kappa * tau) / kappa


def damped_rabi_terms(gamma: float, v: float, tau: float) -> tuple[float, float]:
    """
    ``rabi_terms`` scaled by the envelope exp(−3Γτ/2).

    Below the critical drive cosh and sinh grow as exp(|Ω|τ) with |Ω| ≤ Γ/2, so the
    envelope is folded into each exponential before evaluation and nothing
    overflows at large Γτ.
    """
    envelope_rate = 1.5 * gamma
    omega_sq = v * v - gamma * gamma / 4

    if omega_sq >= 0 or abs(omega_sq * tau * tau) < SMALL_RABI_PHASE**2:
        envelope = math.exp(-envelope_rate * tau)
        cos_term, sinc_term = rabi_terms(gamma, v, tau)
        return envelope * cos_term, envelope * sinc_term

    kappa = math.sqrt(-omega_sq)
    grow = math.exp((kappa - envelope_rate) * tau)
    shrink = math.exp(-(kappa + envelope_rate) * tau)
    return 0.5 * (grow + shrink), 0.5 * (grow - shrink) / kappa
