"""
Figure data: predictive and retrodictive matrix elements against τ.

Figure 1 is the thermal atom (n̄ = 1); figures 2–4 the driven atom (V = 4Γ).
Predictive panels propagate the prepared state with the exact channel;
retrodictive panels call ``retrodict_open`` on the detected state. τ is the
abscissa and always ascends; plotting it increasing to the left is left to the
consumer.
"""

from collections.abc import Sequence

import numpy as np

from src.channels.models import ChannelParams
from src.channels.superoperator import apply, build_superoperator
from src.config import figure_defaults
from src.exceptions import InvalidParameterError, UnknownFigureError
from src.logging_config import get_logger
from src.models.base import ChannelKind, CurveDirection, FigureId
from src.qop_core.algebra import E, G, Operator2, identity, pauli
from src.qop_core.models import DensityMatrix, PomElement
from src.qop_core.states import bloch_operator, excited_projector
from src.retrodiction.retrodict import retrodict_open

from .driven import driven_steady_state
from .models import FigureSpec, ScenarioCurve, check_tau_grid

logger = get_logger(__name__)

DIAGONAL = ["rho_ee", "rho_gg"]
IMAG_OFF = ["im_rho_eg", "im_rho_ge"]
OFF_DIAG = ["re_rho_eg", "im_rho_eg", "re_rho_ge", "im_rho_ge"]
ALL_SERIES = ["rho_ee", "rho_gg", "re_rho_eg", "im_rho_eg", "re_rho_ge", "im_rho_ge"]

_P = CurveDirection.PREDICTIVE
_R = CurveDirection.RETRODICTIVE
_THERMAL = ChannelKind.THERMAL
_DRIVEN = ChannelKind.DRIVEN

FIGURES: dict[FigureId, FigureSpec] = {
    FigureId.FIG_1A: FigureSpec(kind=_THERMAL, direction=_P, state="excited", series=DIAGONAL),
    FigureId.FIG_1B: FigureSpec(kind=_THERMAL, direction=_R, state="excited", series=DIAGONAL),
    FigureId.FIG_2A: FigureSpec(kind=_DRIVEN, direction=_P, state="excited", series=DIAGONAL),
    FigureId.FIG_2B: FigureSpec(kind=_DRIVEN, direction=_R, state="excited", series=DIAGONAL),
    FigureId.FIG_2C: FigureSpec(kind=_DRIVEN, direction=_P, state="excited", series=IMAG_OFF),
    FigureId.FIG_2D: FigureSpec(kind=_DRIVEN, direction=_R, state="excited", series=IMAG_OFF),
    FigureId.FIG_3A: FigureSpec(kind=_DRIVEN, direction=_P, state="sigma2_plus", series=DIAGONAL),
    FigureId.FIG_3B: FigureSpec(kind=_DRIVEN, direction=_R, state="sigma2_plus", series=DIAGONAL),
    FigureId.FIG_3C: FigureSpec(kind=_DRIVEN, direction=_P, state="sigma2_plus", series=IMAG_OFF),
    FigureId.FIG_3D: FigureSpec(kind=_DRIVEN, direction=_R, state="sigma2_plus", series=IMAG_OFF),
    FigureId.FIG_4A: FigureSpec(kind=_DRIVEN, direction=_R, state="steady_state", series=DIAGONAL),
    FigureId.FIG_4B: FigureSpec(kind=_DRIVEN, direction=_R, state="steady_state", series=OFF_DIAG),
}


def resolve_figure(figure: FigureId | str) -> FigureId:
    """Parse a figure id such as ``"2b"``."""
    try:
        return FigureId(figure)
    except ValueError as exc:
        raise UnknownFigureError(str(figure)) from exc


def _state_operator(state: str, params: ChannelParams) -> Operator2:
    if state == "excited":
        return excited_projector()
    if state == "sigma2_plus":
        # (|e⟩ + i|g⟩)/√2
        return 0.5 * (identity() + pauli(2))
    if state == "steady_state":
        return bloch_operator(driven_steady_state(params.gamma, params.effective_v))
    raise InvalidParameterError("FigureSpec", "state", state, "unknown state")


def _elements(op: Operator2) -> dict[str, float]:
    return {
        "rho_ee": float(op[E, E].real),
        "rho_gg": float(op[G, G].real),
        "re_rho_eg": float(op[E, G].real),
        "im_rho_eg": float(op[E, G].imag),
        "re_rho_ge": float(op[G, E].real),
        "im_rho_ge": float(op[G, E].imag),
    }


def _curve(grid: list[float], ops: list[Operator2]) -> ScenarioCurve:
    rows = [_elements(op) for op in ops]
    return ScenarioCurve(
        tau_grid=grid, series={name: [row[name] for row in rows] for name in ALL_SERIES}
    )


def predictive_curve(
    params: ChannelParams, rho0: DensityMatrix, tau_grid: Sequence[float]
) -> ScenarioCurve:
    """Elements of Φ_τ(ρ̂₀) for every τ in the grid (``params.tau`` is ignored)."""
    grid = check_tau_grid(tau_grid, "predictive_curve")
    ops = [apply(build_superoperator(params.at_tau(tau)), rho0.op) for tau in grid]
    return _curve(grid, ops)


def retrodictive_curve(
    params: ChannelParams, pom: PomElement, tau_grid: Sequence[float]
) -> ScenarioCurve:
    """Elements of the retrodictive state for outcome ``pom`` at every τ in the grid."""
    grid = check_tau_grid(tau_grid, "retrodictive_curve")
    ops = [retrodict_open(params.at_tau(tau), pom).rho_retr.op for tau in grid]
    return _curve(grid, ops)


def figure_params(
    figure: FigureId | str,
    gamma: float = figure_defaults.gamma,
    nbar: float = figure_defaults.nbar,
    v: float = figure_defaults.v,
) -> ChannelParams:
    """Channel parameters for a figure; only the parameter its kind uses is kept."""
    spec = FIGURES[resolve_figure(figure)]
    if spec.kind == ChannelKind.THERMAL:
        return ChannelParams(kind=spec.kind, gamma=gamma, nbar=nbar)
    return ChannelParams(kind=spec.kind, gamma=gamma, v=v)


def default_tau_grid(
    figure: FigureId | str,
    points: int = figure_defaults.points,
    gamma: float = figure_defaults.gamma,
    gamma_tau_max: float | None = None,
) -> list[float]:
    """``points`` evenly spaced τ values from 0 to Γτ_max/Γ."""
    spec = FIGURES[resolve_figure(figure)]
    if points < 2:
        raise InvalidParameterError("default_tau_grid", "points", points, "must be at least 2")
    if gamma_tau_max is None:
        gamma_tau_max = (
            figure_defaults.thermal_gamma_tau_max
            if spec.kind == ChannelKind.THERMAL
            else figure_defaults.driven_gamma_tau_max
        )
    if not gamma_tau_max > 0:
        raise InvalidParameterError(
            "default_tau_grid", "gamma_tau_max", gamma_tau_max, "must be positive"
        )
    return [float(t) for t in np.linspace(0.0, gamma_tau_max, points) / gamma]


def figure_data(
    figure: FigureId | str, params: ChannelParams, tau_grid: Sequence[float]
) -> ScenarioCurve:
    """
    Series plotted in one figure panel.

    Raises:
        UnknownFigureError: ``figure`` is not a known id
        InvalidParameterError: empty or unsorted grid, or ``params`` of the wrong kind
    """
    figure_id = resolve_figure(figure)
    spec = FIGURES[figure_id]
    if params.kind != spec.kind:
        raise InvalidParameterError(
            "figure_data",
            "params.kind",
            params.kind.value,
            f"figure {figure_id.value} needs {spec.kind.value}",
        )

    state = _state_operator(spec.state, params)
    logger.info(
        f"Figure {figure_id.value}: {spec.direction.value} {spec.kind.value}, "
        f"state={spec.state}, points={len(tau_grid)}"
    )
    if spec.direction == CurveDirection.PREDICTIVE:
        curve = predictive_curve(params, DensityMatrix(op=state), tau_grid)
    else:
        curve = retrodictive_curve(params, PomElement(op=state, label=spec.state), tau_grid)

    selected = curve.select(spec.series)
    return ScenarioCurve(tau_grid=selected.tau_grid, series=selected.series, figure=figure_id)
