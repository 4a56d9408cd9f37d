"""
State constructors, Bloch-vector conversions and normalization.
"""

import math

import numpy as np

from src.config import HERMITICITY_TOL, POSTERIOR_SUM_TOL
from src.exceptions import (
    InvalidParameterError,
    NonPhysicalOperatorError,
    UnnormalizableError,
)
from src.models.base import Role

from .algebra import E, G, Operator2, as_operator, basis_operator, identity, ket, pauli, projector
from .models import BlochVector, DensityMatrix, PomElement, PomSet, PreparationEnsemble


def excited_projector() -> Operator2:
    """|e⟩⟨e|."""
    return basis_operator(E, E)


def ground_projector() -> Operator2:
    """|g⟩⟨g|."""
    return basis_operator(G, G)


def theta_ket(theta: float) -> np.ndarray:
    """|θ⟩ = cos(θ/2)|g⟩ + sin(θ/2)|e⟩."""
    return ket(math.sin(theta / 2), math.cos(theta / 2))


def projector_theta(theta: float, label: str | None = None) -> PomElement:
    """Rank-1 projector |θ⟩⟨θ|; θ=0 is |g⟩⟨g|, θ=π is |e⟩⟨e|, θ=π/2 is |+⟩⟨+|."""
    if not math.isfinite(theta):
        raise InvalidParameterError("projector_theta", "theta", theta, "must be finite")
    return PomElement(op=projector(theta_ket(theta)), label=label or f"theta:{theta!r}")


def plus_projector() -> Operator2:
    """|+⟩⟨+| with |+⟩ = (|e⟩ + |g⟩)/√2."""
    return 0.5 * (identity() + pauli(1))


def to_bloch(rho: DensityMatrix) -> BlochVector:
    """Bloch vector (Tr ρ̂σ̂₁, Tr ρ̂σ̂₂, Tr ρ̂σ̂₃)."""
    op = rho.op
    # Tr(ρσ₁) = 2 Re ρ_eg, Tr(ρσ₂) = -2 Im ρ_eg, Tr(ρσ₃) = ρ_ee - ρ_gg
    return BlochVector(
        u=float(2.0 * op[E, G].real),
        v=float(-2.0 * op[E, G].imag),
        w=float(op[E, E].real - op[G, G].real),
    )


def bloch_operator(b: BlochVector) -> Operator2:
    """½[1̂ + uσ̂₁ + vσ̂₂ + wσ̂₃] without any physicality check."""
    return np.array(
        [
            [0.5 * (1.0 + b.w), 0.5 * complex(b.u, -b.v)],
            [0.5 * complex(b.u, b.v), 0.5 * (1.0 - b.w)],
        ],
        dtype=np.complex128,
    )


def from_bloch(b: BlochVector, role: Role = Role.PREDICTIVE) -> DensityMatrix:
    """Density matrix ½[1̂ + uσ̂₁ + vσ̂₂ + wσ̂₃]; rejects |b| > 1."""
    if not b.is_physical:
        raise NonPhysicalOperatorError(
            "BlochVector", f"norm {b.norm!r} exceeds 1", {"u": b.u, "v": b.v, "w": b.w}
        )
    return DensityMatrix(op=bloch_operator(b), role=role)


def normalize_to_density(op: Operator2, role: Role = Role.PREDICTIVE) -> DensityMatrix:
    """op / Tr(op), validated as a density matrix."""
    op = as_operator(op)
    tr = op[0, 0] + op[1, 1]
    if abs(tr.imag) > HERMITICITY_TOL or not tr.real > 0:
        raise UnnormalizableError(float(tr.real), {"trace_imag": float(tr.imag)})
    return DensityMatrix(op=op / tr.real, role=role)


def outcome_probabilities(rho: DensityMatrix, pom_set: PomSet) -> dict[str, float]:
    """Predictive outcome probabilities Tr[ρ̂Π̂_m] for a complete measurement."""
    probabilities = {
        element.label: float(np.real(np.trace(rho.op @ element.op)))
        for element in pom_set.elements
    }
    total = sum(probabilities.values())
    if abs(total - 1.0) > POSTERIOR_SUM_TOL:
        raise NonPhysicalOperatorError("PomSet", f"outcome probabilities sum to {total!r}")
    return probabilities


def unbiased_ensemble(prep_set: PomSet) -> PreparationEnsemble:
    """Preparation operators Λ̂_p = Ξ̂_p/2 of an unbiased source described by ``prep_set``."""
    return PreparationEnsemble(
        items=[(element.label, 0.5 * element.op) for element in prep_set.elements]
    )


def eg_pom_set() -> PomSet:
    """Excited/ground measurement {|e⟩⟨e|, |g⟩⟨g|}."""
    return PomSet(
        elements=[
            PomElement(op=excited_projector(), label="e"),
            PomElement(op=ground_projector(), label="g"),
        ]
    )
