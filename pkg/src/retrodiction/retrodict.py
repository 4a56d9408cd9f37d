"""
Retrodictive density matrices for closed and open two-level systems.

For an unmonitored environment the reduced retrodictive operator is the
Hilbert–Schmidt adjoint of the predictive channel applied to the measurement POM
element, normalized to unit trace:

    ρ̂_retr(t_p) = Φ†(Π̂_m) / Tr[Φ†(Π̂_m)]

``retrodict_pauli`` reaches the same state without forming the adjoint, by
propagating (1̂ + σ̂_k)/2 and 1̂/2 forward and projecting onto Π̂_m.
"""

import numpy as np

from src.channels.models import ChannelParams, Superoperator
from src.channels.superoperator import adjoint, apply, build_superoperator
from src.config import IMPOSSIBLE_OUTCOME_FLOOR, UNITARITY_TOL
from src.exceptions import ImpossibleOutcomeError, NonUnitaryError
from src.logging_config import get_retrodiction_logger
from src.models.base import Role
from src.qop_core.algebra import (
    Operator2,
    as_operator,
    dagger,
    identity,
    pauli,
    unitarity_deviation,
)
from src.qop_core.models import BlochVector, DensityMatrix, PomElement
from src.qop_core.states import bloch_operator, normalize_to_density

from .models import RetrodictionResult

logger = get_retrodiction_logger()


def _overlap(a: Operator2, pom_op: Operator2) -> float:
    """Re Tr[ÂΠ̂]."""
    return float(np.real(np.trace(a @ pom_op)))


def _check_normalization(normalization: float, params: ChannelParams) -> None:
    if not normalization > IMPOSSIBLE_OUTCOME_FLOOR:
        raise ImpossibleOutcomeError(
            normalization,
            {"kind": params.kind.value, "gamma": params.gamma, "tau": params.tau},
        )


def retrodict_closed(pom: PomElement, unitary: Operator2) -> DensityMatrix:
    """
    Closed-system retrodiction: normalize(Û†Π̂Û).

    Raises:
        NonUnitaryError: ‖Û†Û − 1̂‖∞ exceeds UNITARITY_TOL
        UnnormalizableError: the POM element has zero trace
    """
    u = as_operator(unitary, "unitary")
    deviation = unitarity_deviation(u)
    if deviation > UNITARITY_TOL:
        raise NonUnitaryError(deviation)
    return normalize_to_density(dagger(u) @ pom.op @ u, Role.RETRODICTIVE)


def retrodict_open(
    params: ChannelParams,
    pom: PomElement,
    superoperator: Superoperator | None = None,
) -> RetrodictionResult:
    """
    Retrodictive state at the preparation time for outcome ``pom``.

    ``superoperator`` overrides the exact channel for ``params`` (tests pass an
    RK4-assembled channel here).

    Raises:
        ImpossibleOutcomeError: N = Tr[Φ†(Π̂)] is not above IMPOSSIBLE_OUTCOME_FLOOR
    """
    channel = superoperator if superoperator is not None else build_superoperator(params)
    image = apply(adjoint(channel), pom.op)
    normalization = float(np.real(image[0, 0] + image[1, 1]))
    _check_normalization(normalization, params)

    logger.debug(
        f"Adjoint retrodiction: kind={params.kind.value}, gamma_tau={params.gamma_tau}, "
        f"N={normalization:.6e}"
    )
    rho = DensityMatrix(op=image / normalization, role=Role.RETRODICTIVE)
    return RetrodictionResult(rho_retr=rho, normalization=normalization)


def retrodict_pauli(
    params: ChannelParams,
    pom: PomElement,
    superoperator: Superoperator | None = None,
) -> RetrodictionResult:
    """
    Retrodictive state from forward-propagated Pauli operators.

    N = Tr[1̂(t_m)Π̂] and u_k = Tr[(1̂ + σ̂_k)(t_m)Π̂]/N − 1.
    """
    channel = superoperator if superoperator is not None else build_superoperator(params)
    half_identity = apply(channel, 0.5 * identity())
    normalization = 2.0 * _overlap(half_identity, pom.op)
    _check_normalization(normalization, params)

    halves = [apply(channel, 0.5 * (identity() + pauli(k))) for k in (1, 2, 3)]
    components = [2.0 * _overlap(half, pom.op) / normalization - 1.0 for half in halves]
    b = BlochVector(u=components[0], v=components[1], w=components[2])

    logger.debug(
        f"Pauli retrodiction: kind={params.kind.value}, gamma_tau={params.gamma_tau}, "
        f"bloch=({b.u:.6g}, {b.v:.6g}, {b.w:.6g})"
    )
    rho = DensityMatrix(op=bloch_operator(b), role=Role.RETRODICTIVE)
    return RetrodictionResult(rho_retr=rho, normalization=normalization)
