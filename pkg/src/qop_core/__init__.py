"""
Two-level operator algebra and validated quantum-mechanical types.

Everything downstream (channels, retrodiction, scenarios) is built on these.
"""

from .algebra import (
    Operator2,
    add,
    as_operator,
    basis_operator,
    dagger,
    eigenvalues_hermitian,
    hs_inner,
    identity,
    is_hermitian,
    is_unitary,
    matmul,
    max_abs,
    pauli,
    projector,
    scale,
    sigma_minus,
    sigma_plus,
    trace,
)
from .codec import operator_from_json, operator_to_json
from .models import BlochVector, DensityMatrix, PomElement, PomSet, PreparationEnsemble
from .states import (
    eg_pom_set,
    excited_projector,
    from_bloch,
    ground_projector,
    normalize_to_density,
    outcome_probabilities,
    plus_projector,
    projector_theta,
    to_bloch,
    unbiased_ensemble,
)

__all__ = [
    "Operator2",
    "BlochVector",
    "DensityMatrix",
    "PomElement",
    "PomSet",
    "PreparationEnsemble",
    "add",
    "as_operator",
    "basis_operator",
    "dagger",
    "eigenvalues_hermitian",
    "eg_pom_set",
    "excited_projector",
    "from_bloch",
    "ground_projector",
    "hs_inner",
    "identity",
    "is_hermitian",
    "is_unitary",
    "matmul",
    "max_abs",
    "normalize_to_density",
    "operator_from_json",
    "operator_to_json",
    "outcome_probabilities",
    "pauli",
    "plus_projector",
    "projector",
    "projector_theta",
    "scale",
    "sigma_minus",
    "sigma_plus",
    "to_bloch",
    "trace",
    "unbiased_ensemble",
]
