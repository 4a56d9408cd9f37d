"""Tests for the two-level operator algebra, validated types and the JSON codec."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from numpy.testing import assert_allclose

from src.exceptions import InvalidParameterError, NonPhysicalOperatorError, UnnormalizableError
from src.models.base import Role
from src.qop_core.algebra import (
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
    sigma_minus,
    sigma_plus,
    trace,
)
from src.qop_core.codec import operator_from_json, operator_to_json
from src.qop_core.models import BlochVector, DensityMatrix, PomElement, PomSet, PreparationEnsemble
from src.qop_core.states import (
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

from .fixtures import bloch_vectors, density_matrices, operators


class TestPauliAlgebra:
    """Pauli matrices and ladder operators in the (e, g) basis."""

    def test_squares_are_identity(self):
        """σ̂_k² = 1̂ for k = 1, 2, 3."""
        for k in (1, 2, 3):
            assert_allclose(pauli(k) @ pauli(k), identity())

    def test_product_rule(self):
        """σ̂₁σ̂₂ = iσ̂₃ and cyclic permutations."""
        assert_allclose(pauli(1) @ pauli(2), 1j * pauli(3))
        assert_allclose(pauli(2) @ pauli(3), 1j * pauli(1))
        assert_allclose(pauli(3) @ pauli(1), 1j * pauli(2))

    def test_anticommute(self):
        """Distinct Pauli matrices anticommute."""
        for j, k in ((1, 2), (2, 3), (1, 3)):
            assert_allclose(pauli(j) @ pauli(k) + pauli(k) @ pauli(j), np.zeros((2, 2)))

    def test_sigma3_is_excited_minus_ground(self):
        """σ̂₃ = |e⟩⟨e| − |g⟩⟨g|, so index 0 is the excited state."""
        assert_allclose(pauli(3), excited_projector() - ground_projector())

    def test_ladder_operators(self):
        """σ̂₊ = |e⟩⟨g| = (σ̂₁ + iσ̂₂)/2 and σ̂₋ is its adjoint."""
        assert_allclose(sigma_plus(), 0.5 * (pauli(1) + 1j * pauli(2)))
        assert_allclose(sigma_minus(), dagger(sigma_plus()))
        assert_allclose(sigma_plus(), basis_operator(0, 1))

    def test_unknown_index_rejected(self):
        with pytest.raises(InvalidParameterError):
            pauli(4)

    def test_pauli_returns_copy(self):
        """Mutating a returned matrix does not corrupt later calls."""
        first = pauli(1)
        first[0, 0] = 7.0
        assert pauli(1)[0, 0] == 0


class TestOperatorHelpers:
    """Coercion, traces, inner products and spectra."""

    def test_as_operator_rejects_wrong_shape(self):
        with pytest.raises(InvalidParameterError):
            as_operator(np.eye(3))

    def test_as_operator_rejects_non_finite(self):
        with pytest.raises(InvalidParameterError):
            as_operator([[math.nan, 0], [0, 1]])
        with pytest.raises(InvalidParameterError):
            as_operator([[math.inf, 0], [0, 1]])

    def test_as_operator_rejects_non_numeric(self):
        with pytest.raises(InvalidParameterError):
            as_operator([["a", "b"], ["c", "d"]])

    @given(a=operators(), b=operators())
    @settings(max_examples=50, deadline=None)
    def test_hs_inner_conjugate_symmetric(self, a, b):
        """⟨A, B⟩ = conj⟨B, A⟩ and equals Tr(A†B)."""
        assert hs_inner(a, b) == pytest.approx(np.conj(hs_inner(b, a)), abs=1e-12)
        assert hs_inner(a, b) == pytest.approx(trace(dagger(a) @ b), abs=1e-12)

    @given(rho=density_matrices())
    @settings(max_examples=50, deadline=None)
    def test_eigenvalues_match_numpy(self, rho):
        """Closed-form spectrum agrees with numpy.linalg.eigvalsh."""
        assert_allclose(eigenvalues_hermitian(rho.op), np.linalg.eigvalsh(rho.op), atol=1e-12)

    def test_hermiticity_and_unitarity(self):
        assert is_hermitian(pauli(2))
        assert not is_hermitian(sigma_plus())
        assert is_unitary(pauli(1))
        assert not is_unitary(2.0 * identity())

    def test_sum_and_product_of_ladder_operators(self):
        """σ̂₊ + σ̂₋ = σ̂₁ and σ̂₊σ̂₋ = |e⟩⟨e|."""
        assert max_abs(add(sigma_plus(), sigma_minus()) - pauli(1)) == 0.0
        assert_allclose(matmul(sigma_plus(), sigma_minus()), basis_operator(0, 0))
        assert max_abs(np.zeros((0,))) == 0.0


class TestDensityMatrix:
    """Validation of Hermiticity, positivity and unit trace."""

    def test_excited_state_valid(self):
        rho = DensityMatrix(op=excited_projector())
        assert rho.role == Role.PREDICTIVE
        assert rho.element(0, 0) == 1.0

    def test_stored_array_is_read_only(self):
        rho = DensityMatrix(op=excited_projector())
        with pytest.raises(ValueError):
            rho.op[0, 0] = 0.5

    def test_non_hermitian_rejected(self):
        with pytest.raises(NonPhysicalOperatorError, match="non-physical operator"):
            DensityMatrix(op=[[0.5, 0.5], [0.0, 0.5]])

    def test_wrong_trace_rejected(self):
        with pytest.raises(NonPhysicalOperatorError):
            DensityMatrix(op=[[0.6, 0.0], [0.0, 0.6]])

    def test_negative_eigenvalue_rejected(self):
        """Bloch vector of length 1.2 gives a negative eigenvalue."""
        op = 0.5 * (identity() + 1.2 * pauli(3))
        with pytest.raises(NonPhysicalOperatorError):
            DensityMatrix(op=op)

    def test_malformed_entries_raise_invalid_parameter(self):
        """Domain errors from validators are not wrapped by pydantic."""
        with pytest.raises(InvalidParameterError):
            DensityMatrix(op=[[math.nan, 0.0], [0.0, 1.0]])


class TestPomAndEnsembles:
    """POM elements, complete POM sets and preparation ensembles."""

    def test_pom_element_accepts_any_positive_scale(self):
        pom = PomElement(op=3.0 * excited_projector(), label="e")
        assert pom.scaled(0.5).op[0, 0] == pytest.approx(1.5)

    def test_pom_element_rejects_negative(self):
        with pytest.raises(NonPhysicalOperatorError):
            PomElement(op=-excited_projector())

    def test_scaled_rejects_non_positive_factor(self):
        with pytest.raises(InvalidParameterError):
            PomElement(op=excited_projector()).scaled(0.0)

    def test_pom_set_must_sum_to_identity(self):
        assert eg_pom_set().labels == ["e", "g"]
        with pytest.raises(NonPhysicalOperatorError):
            PomSet(elements=[PomElement(op=excited_projector(), label="e")])

    def test_pom_set_labels_unique(self):
        with pytest.raises(InvalidParameterError):
            PomSet(
                elements=[
                    PomElement(op=excited_projector(), label="x"),
                    PomElement(op=ground_projector(), label="x"),
                ]
            )

    def test_unbiased_ensemble_priors(self):
        ensemble = unbiased_ensemble(eg_pom_set())
        assert ensemble.prior("e") == pytest.approx(0.5)
        assert ensemble.prior("g") == pytest.approx(0.5)
        with pytest.raises(InvalidParameterError):
            ensemble.prior("plus")

    def test_ensemble_from_mapping(self):
        ensemble = PreparationEnsemble(
            items={"e": 0.25 * excited_projector(), "plus": 0.75 * plus_projector()}
        )
        assert ensemble.labels == ["e", "plus"]

    def test_ensemble_weights_must_sum_to_one(self):
        with pytest.raises(NonPhysicalOperatorError):
            PreparationEnsemble(items=[("e", 0.4 * excited_projector())])

    def test_empty_ensemble_rejected(self):
        with pytest.raises(InvalidParameterError):
            PreparationEnsemble(items=[])


class TestStates:
    """Named states, Bloch conversions and normalization."""

    def test_projector_theta_landmarks(self):
        """θ = 0 is |g⟩, θ = π is |e⟩, θ = π/2 is |+⟩."""
        assert_allclose(projector_theta(0.0).op, ground_projector(), atol=1e-15)
        assert_allclose(projector_theta(math.pi).op, excited_projector(), atol=1e-15)
        assert_allclose(projector_theta(math.pi / 2).op, plus_projector(), atol=1e-15)

    def test_projector_theta_rejects_non_finite(self):
        with pytest.raises(InvalidParameterError):
            projector_theta(math.nan)

    @given(b=bloch_vectors)
    @settings(max_examples=100, deadline=None)
    def test_bloch_round_trip(self, b):
        """to_bloch(from_bloch(b)) = b inside the closed unit ball."""
        back = to_bloch(from_bloch(b))
        assert_allclose(back.as_array(), b.as_array(), atol=1e-12)

    def test_sigma2_plus_bloch_vector(self, sigma2_plus_op):
        """(|e⟩ + i|g⟩)/√2 has Bloch vector (0, 1, 0) and ρ_eg = −i/2."""
        rho = DensityMatrix(op=sigma2_plus_op)
        assert_allclose(to_bloch(rho).as_array(), [0.0, 1.0, 0.0], atol=1e-15)
        assert rho.element(0, 1) == pytest.approx(-0.5j)

    def test_from_bloch_rejects_long_vector(self):
        with pytest.raises(NonPhysicalOperatorError):
            from_bloch(BlochVector(u=1.0, v=1.0, w=0.0))

    def test_bloch_vector_rejects_non_finite(self):
        with pytest.raises(InvalidParameterError):
            BlochVector(u=math.inf, v=0.0, w=0.0)

    def test_normalize_to_density(self):
        rho = normalize_to_density(4.0 * plus_projector(), Role.RETRODICTIVE)
        assert rho.role == Role.RETRODICTIVE
        assert_allclose(rho.op, plus_projector())

    def test_zero_trace_is_unnormalizable(self):
        with pytest.raises(UnnormalizableError, match="unnormalizable"):
            normalize_to_density(np.zeros((2, 2)))
        with pytest.raises(UnnormalizableError):
            normalize_to_density(-excited_projector())

    def test_outcome_probabilities(self):
        rho = DensityMatrix(op=plus_projector())
        probabilities = outcome_probabilities(rho, eg_pom_set())
        assert probabilities == pytest.approx({"e": 0.5, "g": 0.5})


class TestCodec:
    """Labelled-element JSON encoding of operators."""

    def test_decode_sigma2_plus(self, sigma2_plus_op):
        text = '{"ee": [0.5, 0], "eg": [0, -0.5], "ge": [0, 0.5], "gg": [0.5, 0]}'
        assert_allclose(operator_from_json(text), sigma2_plus_op)

    def test_encode_folds_negative_zero(self):
        encoded = operator_to_json(-0.0 * identity())
        assert all(math.copysign(1.0, part) == 1.0 for pair in encoded.values() for part in pair)

    def test_encode_then_decode(self, sigma2_plus_op):
        assert_allclose(operator_from_json(operator_to_json(sigma2_plus_op)), sigma2_plus_op)

    @pytest.mark.parametrize(
        "text",
        [
            "not json",
            "[1, 2, 3, 4]",
            '{"ee": [1, 0], "eg": [0, 0], "ge": [0, 0]}',
            '{"ee": [1, 0], "eg": [0, 0], "ge": [0, 0], "gg": [0]}',
            '{"ee": [true, 0], "eg": [0, 0], "ge": [0, 0], "gg": [0, 0]}',
            '{"ee": [1, 0], "eg": [0, 0], "ge": [0, 0], "gg": [0, 0], "xx": [0, 0]}',
        ],
    )
    def test_malformed_json_rejected(self, text):
        with pytest.raises(InvalidParameterError):
            operator_from_json(text)

