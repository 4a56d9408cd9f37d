"""
Exact predictive channels Â ↦ Tr_E[Û Â ρ̂_E Û†] as 4×4 superoperators.

Each column of a superoperator is the channel image of a basis operator |i⟩⟨k|.
Reading the retrodictive matrix elements off the adjoint is the same coefficient
extraction as differentiating Tr[Â(t_m)Π̂] with respect to A_ik.
"""

import math

import numpy as np
import scipy.linalg

from src.logging_config import get_channels_logger, log_channel_event
from src.models.base import ChannelKind
from src.qop_core.algebra import E, G, Operator2, as_operator, zeros

from .lindblad import generator_matrix
from .models import ChannelParams, Superoperator
from .vectorize import matrix_from_action, unvectorize, vectorize

logger = get_channels_logger()


def _thermal_action(a: Operator2, gamma: float, nbar: float, tau: float) -> Operator2:
    """
    Closed-form thermal channel (n̄ = 0 is spontaneous emission).

    Populations relax at 2Γ(2n̄+1) toward ⟨e|ρ̂|e⟩ = n̄/(2n̄+1); coherences decay
    at Γ(2n̄+1).
    """
    total = 2.0 * nbar + 1.0
    up = nbar / total
    down = (nbar + 1.0) / total
    relax = math.exp(-2.0 * gamma * total * tau)
    dephase = math.exp(-gamma * total * tau)

    out = zeros()
    out[E, E] = a[E, E] * (up + down * relax) + a[G, G] * up * (1.0 - relax)
    out[G, G] = a[G, G] * (down + up * relax) + a[E, E] * down * (1.0 - relax)
    out[E, G] = a[E, G] * dephase
    out[G, E] = a[G, E] * dephase
    return out


def identity_superoperator() -> Superoperator:
    return Superoperator(matrix=np.eye(4, dtype=np.complex128))


def build_superoperator(params: ChannelParams) -> Superoperator:
    """
    Exact channel for ``params``.

    Spontaneous and thermal channels use their closed forms; the driven channel is
    the matrix exponential of its Lindblad generator.
    """
    if params.kind == ChannelKind.DRIVEN:
        matrix = scipy.linalg.expm(params.tau * generator_matrix(params))
    else:
        nbar = params.effective_nbar
        matrix = matrix_from_action(lambda a: _thermal_action(a, params.gamma, nbar, params.tau))

    log_channel_event(
        logger,
        "Superoperator built",
        kind=params.kind.value,
        gamma=params.gamma,
        nbar=params.effective_nbar,
        v=params.effective_v,
        tau=params.tau,
    )
    return Superoperator(matrix=matrix)


def apply(s: Superoperator, a: Operator2) -> Operator2:
    """Linear action S(Â)."""
    return unvectorize(s.matrix @ vectorize(as_operator(a)))


def adjoint(s: Superoperator) -> Superoperator:
    """Hilbert–Schmidt adjoint: Tr[Â† S(B̂)] = Tr[(S†(Â))† B̂]."""
    return Superoperator(matrix=np.conj(s.matrix).T)


def compose(second: Superoperator, first: Superoperator) -> Superoperator:
    """Channel that applies ``first`` then ``second``."""
    return Superoperator(matrix=second.matrix @ first.matrix)


def choi_matrix(s: Superoperator) -> np.ndarray:
    """Choi matrix Σ_ik |i⟩⟨k| ⊗ S(|i⟩⟨k|), indexed [(i, a), (k, b)]."""
    # s.matrix[(a, b), (i, k)] = S(|i⟩⟨k|)_ab
    tensor = s.matrix.reshape(2, 2, 2, 2)
    return np.transpose(tensor, (2, 0, 3, 1)).reshape(4, 4)
