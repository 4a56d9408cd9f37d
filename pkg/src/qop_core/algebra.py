"""
Exact 2×2 complex operator algebra in the (e, g) basis.

Index 0 is the excited state: ``op[0, 1] == ⟨e|Â|g⟩``.
"""

import math
from typing import Any, TypeAlias

import numpy as np
from numpy.typing import NDArray

from src.config import HERMITICITY_TOL, UNITARITY_TOL
from src.exceptions import InvalidParameterError

Operator2: TypeAlias = NDArray[np.complex128]

BASIS_LABELS = ("e", "g")
E, G = 0, 1

_PAULI = {
    1: np.array([[0, 1], [1, 0]], dtype=np.complex128),
    2: np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    3: np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


def as_operator(value: Any, entity_type: str = "Operator2") -> Operator2:
    """Coerce ``value`` to a finite 2×2 complex array (a fresh copy)."""
    try:
        op = np.array(value, dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise InvalidParameterError(entity_type, "entries", value, "not numeric") from exc
    if op.shape != (2, 2):
        raise InvalidParameterError(entity_type, "entries", op.shape, "expected shape (2, 2)")
    if not np.all(np.isfinite(op)):
        raise InvalidParameterError(entity_type, "entries", op.tolist(), "entries must be finite")
    return op


def frozen(op: Operator2) -> Operator2:
    """Return a read-only copy of ``op``."""
    out = np.array(op, dtype=np.complex128)
    out.flags.writeable = False
    return out


def identity() -> Operator2:
    return np.eye(2, dtype=np.complex128)


def zeros() -> Operator2:
    return np.zeros((2, 2), dtype=np.complex128)


def basis_operator(i: int, k: int) -> Operator2:
    """|i⟩⟨k| with 0 = e and 1 = g."""
    op = zeros()
    op[i, k] = 1.0
    return op


def pauli(index: int) -> Operator2:
    """σ̂₁, σ̂₂ or σ̂₃ in the (e, g) basis."""
    if index not in _PAULI:
        raise InvalidParameterError("pauli", "index", index, "must be 1, 2 or 3")
    return _PAULI[index].copy()


def sigma_plus() -> Operator2:
    """Raising operator |e⟩⟨g|."""
    return basis_operator(E, G)


def sigma_minus() -> Operator2:
    """Lowering operator |g⟩⟨e|."""
    return basis_operator(G, E)


def ket(amp_e: complex, amp_g: complex) -> NDArray[np.complex128]:
    return np.array([amp_e, amp_g], dtype=np.complex128)


def projector(state: NDArray[np.complex128]) -> Operator2:
    """|ψ⟩⟨ψ| for an (unnormalized) ket."""
    return np.outer(state, np.conj(state))


def add(a: Operator2, b: Operator2) -> Operator2:
    return a + b


def scale(c: complex, a: Operator2) -> Operator2:
    return c * a


def matmul(a: Operator2, b: Operator2) -> Operator2:
    return a @ b


def dagger(a: Operator2) -> Operator2:
    return np.conj(a).T


def trace(a: Operator2) -> complex:
    return complex(a[0, 0] + a[1, 1])


def hs_inner(a: Operator2, b: Operator2) -> complex:
    """Hilbert–Schmidt inner product Tr(A†B)."""
    return complex(np.vdot(a, b))


def max_abs(a: NDArray[Any]) -> float:
    """Entrywise infinity norm."""
    return float(np.max(np.abs(a))) if a.size else 0.0


def is_hermitian(a: Operator2, tol: float = HERMITICITY_TOL) -> bool:
    return max_abs(a - dagger(a)) <= tol


def is_unitary(u: Operator2, tol: float = UNITARITY_TOL) -> bool:
    return unitarity_deviation(u) <= tol


def unitarity_deviation(u: Operator2) -> float:
    return max_abs(dagger(u) @ u - identity())


def eigenvalues_hermitian(a: Operator2) -> tuple[float, float]:
    """
    Eigenvalues of a Hermitian 2×2 operator, ascending.

    Closed form from trace and determinant; the Hermitian part of ``a`` is used.
    """
    d_e = a[0, 0].real
    d_g = a[1, 1].real
    off = 0.5 * (a[0, 1] + np.conj(a[1, 0]))
    mean = 0.5 * (d_e + d_g)
    radius = math.hypot(0.5 * (d_e - d_g), abs(off))
    return (mean - radius, mean + radius)
