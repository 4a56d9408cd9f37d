"""
Lindblad master equation and the fixed-step RK4 oracle.

The generator covers all three channels:

    dρ̂/dt = −i[(V/2)(σ̂₊ + σ̂₋), ρ̂]
            + Γ(n̄+1)(2σ̂₋ρ̂σ̂₊ − σ̂₊σ̂₋ρ̂ − ρ̂σ̂₊σ̂₋)
            + Γn̄(2σ̂₊ρ̂σ̂₋ − σ̂₋σ̂₊ρ̂ − ρ̂σ̂₋σ̂₊)

with V = 0 unless the channel is driven and n̄ = 0 unless it is thermal.
"""

import threading
from collections.abc import Callable, Sequence

import numpy as np

from src.config import TRACE_DRIFT_TOL
from src.exceptions import IntegrationCancelledError, InvalidParameterError
from src.logging_config import get_channels_logger
from src.qop_core.algebra import (
    Operator2,
    as_operator,
    basis_operator,
    dagger,
    sigma_minus,
    sigma_plus,
    trace,
)
from src.qop_core.models import DensityMatrix

from .models import ChannelParams, Superoperator
from .vectorize import VEC_ORDER, matrix_from_action, unvectorize, vectorize

logger = get_channels_logger()


def _dissipator(jump: Operator2, rho: Operator2) -> Operator2:
    """2ĴρĴ† − Ĵ†Ĵρ − ρĴ†Ĵ."""
    jump_dag = dagger(jump)
    number = jump_dag @ jump
    return 2.0 * jump @ rho @ jump_dag - number @ rho - rho @ number


def lindblad_rhs(params: ChannelParams, rho: Operator2) -> Operator2:
    """Time derivative dρ̂/dt under ``params`` (``params.tau`` is ignored)."""
    rho = as_operator(rho)
    gamma = params.gamma
    nbar = params.effective_nbar
    drive = params.effective_v

    raising = sigma_plus()
    lowering = sigma_minus()

    out = gamma * (nbar + 1.0) * _dissipator(lowering, rho)
    if nbar > 0:
        out = out + gamma * nbar * _dissipator(raising, rho)
    if drive > 0:
        hamiltonian = 0.5 * drive * (raising + lowering)
        out = out - 1j * (hamiltonian @ rho - rho @ hamiltonian)
    return out


def generator_matrix(params: ChannelParams) -> np.ndarray:
    """4×4 matrix L with vec(dρ̂/dt) = L·vec(ρ̂)."""
    return matrix_from_action(lambda basis: lindblad_rhs(params, basis))


def rk4_integrate(
    deriv: Callable[[np.ndarray], np.ndarray],
    y0: np.ndarray,
    h: float | np.ndarray,
    steps: int,
    cancel: threading.Event | None = None,
) -> np.ndarray:
    """
    Classic fourth-order Runge–Kutta for an autonomous system.

    ``h`` may be an array broadcasting against ``y0`` to integrate independent
    systems with different step sizes in one pass.

    Raises:
        IntegrationCancelledError: ``cancel`` was set; checked only between steps
    """
    y = np.array(y0, dtype=np.complex128)
    half = 0.5 * np.asarray(h)
    sixth = np.asarray(h) / 6.0

    for step in range(steps):
        if cancel is not None and cancel.is_set():
            raise IntegrationCancelledError(step, steps)
        k1 = deriv(y)
        k2 = deriv(y + half * k1)
        k3 = deriv(y + half * k2)
        k4 = deriv(y + 2.0 * half * k3)
        y = y + sixth * (k1 + 2.0 * k2 + 2.0 * k3 + k4)

    return y


def _check_steps(steps: int) -> None:
    if steps < 1:
        raise InvalidParameterError("integrate_lindblad", "steps", steps, "must be at least 1")


def integrate_lindblad(
    params: ChannelParams,
    rho0: DensityMatrix,
    steps: int,
    cancel: threading.Event | None = None,
) -> DensityMatrix:
    """
    Integrate the master equation from ``rho0`` over ``params.tau`` with fixed-step RK4.

    The result is renormalized only when the trace has drifted by more than
    TRACE_DRIFT_TOL; that case is logged as a warning.
    """
    _check_steps(steps)
    generator = generator_matrix(params)
    step_size = params.tau / steps

    logger.debug(
        f"RK4 start: kind={params.kind.value}, gamma_tau={params.gamma_tau}, steps={steps}"
    )
    y = rk4_integrate(lambda y: generator @ y, vectorize(rho0.op), step_size, steps, cancel)
    op = unvectorize(y)

    tr = trace(op)
    drift = abs(tr - 1.0)
    if drift > TRACE_DRIFT_TOL:
        logger.warning(
            f"RK4 trace drift {drift:.3e} exceeds {TRACE_DRIFT_TOL:.0e}; renormalizing "
            f"(kind={params.kind.value}, steps={steps})"
        )
        op = op / tr.real

    return DensityMatrix(op=op, role=rho0.role)


def integrate_lindblad_many(
    params_list: Sequence[ChannelParams],
    rho0_list: Sequence[Operator2],
    steps: int,
) -> list[Operator2]:
    """
    Integrate many independent (params, operator) pairs in one batched RK4 pass.

    Operators need not be density matrices: the map is linear, so weighted
    preparation operators and basis operators are propagated as they are.
    """
    _check_steps(steps)
    if len(params_list) != len(rho0_list):
        raise InvalidParameterError(
            "integrate_lindblad_many",
            "rho0_list",
            len(rho0_list),
            f"expected {len(params_list)} operators",
        )
    if not params_list:
        return []

    generators = np.stack([generator_matrix(p) for p in params_list])
    step_sizes = np.array([p.tau / steps for p in params_list])[:, None]
    y0 = np.stack([vectorize(as_operator(op)) for op in rho0_list])

    y = rk4_integrate(lambda y: np.einsum("kij,kj->ki", generators, y), y0, step_sizes, steps)
    return [unvectorize(row) for row in y]


def rk4_superoperators(params_list: Sequence[ChannelParams], steps: int) -> list[Superoperator]:
    """Channels assembled column by column from RK4-propagated basis operators."""
    expanded = [p for p in params_list for _ in VEC_ORDER]
    basis = [basis_operator(i, k) for _ in params_list for i, k in VEC_ORDER]
    images = integrate_lindblad_many(expanded, basis, steps)

    superoperators = []
    for index in range(len(params_list)):
        block = images[4 * index : 4 * index + 4]
        superoperators.append(
            Superoperator(matrix=np.stack([vectorize(op) for op in block], axis=1))
        )
    return superoperators
