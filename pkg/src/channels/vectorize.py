"""
Row-major vectorization of 2×2 operators, order (ee, eg, ge, gg).
"""

from collections.abc import Callable

import numpy as np

from src.qop_core.algebra import Operator2, basis_operator

# (bra, ket) index pairs in vectorization order
VEC_ORDER = ((0, 0), (0, 1), (1, 0), (1, 1))


def vectorize(op: Operator2) -> np.ndarray:
    return np.asarray(op, dtype=np.complex128).reshape(4).copy()


def unvectorize(vec: np.ndarray) -> Operator2:
    return np.asarray(vec, dtype=np.complex128).reshape(2, 2).copy()


def matrix_from_action(action: Callable[[Operator2], Operator2]) -> np.ndarray:
    """4×4 matrix whose column (i, k) is ``action(|i⟩⟨k|)``."""
    columns = [vectorize(action(basis_operator(i, k))) for i, k in VEC_ORDER]
    return np.stack(columns, axis=1)
