"""
Open-system channels for a two-level atom.

Provides exact superoperators for spontaneous emission, a thermal bath and a
resonant drive, plus a fixed-step RK4 master-equation oracle.
"""

from .lindblad import (
    generator_matrix,
    integrate_lindblad,
    integrate_lindblad_many,
    lindblad_rhs,
    rk4_superoperators,
)
from .models import ChannelParams, Superoperator
from .rabi import damped_rabi_terms, rabi_terms
from .superoperator import (
    adjoint,
    apply,
    build_superoperator,
    choi_matrix,
    compose,
    identity_superoperator,
)

__all__ = [
    "ChannelParams",
    "Superoperator",
    "adjoint",
    "apply",
    "build_superoperator",
    "choi_matrix",
    "compose",
    "damped_rabi_terms",
    "generator_matrix",
    "identity_superoperator",
    "integrate_lindblad",
    "integrate_lindblad_many",
    "lindblad_rhs",
    "rabi_terms",
    "rk4_superoperators",
]
