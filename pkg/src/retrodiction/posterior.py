"""
Preparation probabilities P(p|m) in the retrodictive and predictive pictures.

All three routes weigh preparation p by an overlap and normalize:

    retrodictive    Tr[ρ̂_retr Λ̂_p]
    predictive      Tr[Π̂_m Φ(Λ̂_p)]      (Bayes' theorem through the channel)
    unbiased source Tr[Π̂_m Φ(Ξ̂_p)]
"""

from collections.abc import Sequence

import numpy as np

from src.channels.models import ChannelParams, Superoperator
from src.channels.superoperator import apply, build_superoperator
from src.config import IMPOSSIBLE_OUTCOME_FLOOR
from src.exceptions import IncompatibleEnsembleError, InvalidParameterError
from src.logging_config import get_retrodiction_logger
from src.qop_core.algebra import Operator2, trace
from src.qop_core.models import DensityMatrix, PomElement, PreparationEnsemble

from .models import PreparationPosterior

logger = get_retrodiction_logger()


def _overlap(a: Operator2, b: Operator2) -> float:
    return float(np.real(np.trace(a @ b)))


def _normalize(weights: list[tuple[str, float]]) -> PreparationPosterior:
    # Round-off can leave an impossible preparation at -1e-17
    clipped = [(label, max(weight, 0.0)) for label, weight in weights]
    total = sum(weight for _, weight in clipped)
    if not total > IMPOSSIBLE_OUTCOME_FLOOR:
        raise IncompatibleEnsembleError(total, {"labels": [label for label, _ in weights]})
    return PreparationPosterior(entries=[(label, weight / total) for label, weight in clipped])


def preparation_posterior(
    rho_retr: DensityMatrix, ensemble: PreparationEnsemble
) -> PreparationPosterior:
    """
    P(p|m) ∝ Tr[ρ̂_retr Λ̂_p].

    Raises:
        IncompatibleEnsembleError: every overlap vanishes
    """
    return _normalize(
        [(label, _overlap(rho_retr.op, lambda_op)) for label, lambda_op in ensemble.items]
    )


def forward_bayes(
    params: ChannelParams,
    ensemble: PreparationEnsemble,
    pom: PomElement,
    superoperator: Superoperator | None = None,
) -> PreparationPosterior:
    """
    Predictive-picture oracle: P(p|m) = Tr[Π̂_m Φ(Λ̂_p)] / Σ_p Tr[Π̂_m Φ(Λ̂_p)].

    ``superoperator`` replaces the exact channel, e.g. with an RK4-assembled one.
    """
    channel = superoperator if superoperator is not None else build_superoperator(params)
    weights = [
        (label, _overlap(pom.op, apply(channel, lambda_op))) for label, lambda_op in ensemble.items
    ]
    logger.debug(f"Forward Bayes weights: {weights}")
    return _normalize(weights)


def prep_prob_direct(
    params: ChannelParams,
    pom: PomElement,
    prep_elements: Sequence[PomElement],
) -> PreparationPosterior:
    """
    Unbiased-source posterior P(p|m) ∝ Tr[Π̂_m Ξ̂_p(t_m)].

    Raises:
        InvalidParameterError: a preparation element has non-positive trace
    """
    if not prep_elements:
        raise InvalidParameterError("prep_prob_direct", "prep_elements", [], "must not be empty")
    for element in prep_elements:
        tr = trace(element.op).real
        if not tr > 0:
            raise InvalidParameterError(
                "prep_prob_direct", "prep_elements", element.label, f"trace {tr!r} is not positive"
            )

    channel = build_superoperator(params)
    return _normalize(
        [(element.label, _overlap(pom.op, apply(channel, element.op))) for element in prep_elements]
    )
