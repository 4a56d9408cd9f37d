"""Shared fixtures and hypothesis strategies for retroatom tests."""

import math

import numpy as np
import pytest
from hypothesis import strategies as st

from src.channels.models import ChannelParams, Superoperator
from src.channels.superoperator import build_superoperator
from src.config import CheckConfig
from src.models.base import ChannelKind, Role
from src.qop_core.algebra import Operator2, identity, pauli
from src.qop_core.models import BlochVector, DensityMatrix, PomElement, PreparationEnsemble
from src.qop_core.states import bloch_operator

# =============================================================================
# Hypothesis strategies
# =============================================================================

unit_floats = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False, allow_infinity=False)
gamma_floats = st.floats(min_value=0.2, max_value=3.0, allow_nan=False, allow_infinity=False)
gamma_tau_floats = st.floats(min_value=0.0, max_value=4.0, allow_nan=False, allow_infinity=False)
nbar_floats = st.floats(min_value=0.0, max_value=3.0, allow_nan=False, allow_infinity=False)
drive_ratios = st.floats(min_value=0.0, max_value=6.0, allow_nan=False, allow_infinity=False)
channel_kinds = st.sampled_from(list(ChannelKind))


def _shrink_to_ball(components: tuple[float, float, float]) -> BlochVector:
    u, v, w = components
    norm = math.sqrt(u * u + v * v + w * w)
    if norm > 1.0:
        u, v, w = u / norm, v / norm, w / norm
    return BlochVector(u=u, v=v, w=w)


bloch_vectors = st.tuples(unit_floats, unit_floats, unit_floats).map(_shrink_to_ball)


@st.composite
def density_matrices(draw: st.DrawFn, role: Role = Role.PREDICTIVE) -> DensityMatrix:
    """Density matrices from Bloch vectors in the closed unit ball."""
    return DensityMatrix(op=bloch_operator(draw(bloch_vectors)), role=role)


@st.composite
def operators(draw: st.DrawFn) -> Operator2:
    """Arbitrary complex 2×2 operators with entries in the unit square."""
    parts = draw(st.lists(unit_floats, min_size=8, max_size=8))
    return np.array([complex(parts[2 * i], parts[2 * i + 1]) for i in range(4)]).reshape(2, 2)


@st.composite
def pom_elements(draw: st.DrawFn) -> PomElement:
    """Positive operators c·ρ̂ with c in [0.2, 1] and ρ̂ full rank."""
    b = draw(bloch_vectors)
    # Pull inside the ball so the element stays full rank
    inner = BlochVector(u=0.9 * b.u, v=0.9 * b.v, w=0.9 * b.w)
    scale = draw(st.floats(min_value=0.2, max_value=1.0))
    return PomElement(op=scale * bloch_operator(inner), label="random")


@st.composite
def channel_params(draw: st.DrawFn, kind: ChannelKind | None = None) -> ChannelParams:
    """Channel parameters with Γτ in [0, 4]."""
    gamma = draw(gamma_floats)
    return ChannelParams(
        kind=kind if kind is not None else draw(channel_kinds),
        gamma=gamma,
        nbar=draw(nbar_floats),
        v=draw(drive_ratios) * gamma,
        tau=draw(gamma_tau_floats) / gamma,
    )


@st.composite
def ensembles(draw: st.DrawFn) -> PreparationEnsemble:
    """Two or three preparations with weights summing to one."""
    count = draw(st.integers(min_value=2, max_value=3))
    raw = draw(st.lists(st.floats(min_value=0.05, max_value=1.0), min_size=count, max_size=count))
    total = math.fsum(raw)
    items = []
    for index, weight in enumerate(raw):
        rho = draw(density_matrices())
        items.append((f"p{index}", (weight / total) * rho.op))
    return PreparationEnsemble(items=items)


def stretched_thermal(params: ChannelParams) -> Superoperator:
    """Exact channel, except thermal channels run 10% too long."""
    if params.kind == ChannelKind.THERMAL:
        return build_superoperator(params.at_tau(1.1 * params.tau))
    return build_superoperator(params)


# =============================================================================
# Fixtures
# =============================================================================


@pytest.fixture
def rng():
    """Seeded generator so random cases are reproducible."""
    return np.random.default_rng(1234)


@pytest.fixture
def quick_check_config():
    """Check suite configuration small enough for the unit test run."""
    return CheckConfig(
        random_cases=6,
        oracle_cases_per_channel=3,
        tau_zero_poms=3,
        grid_points=11,
    )


@pytest.fixture
def spontaneous_params():
    return ChannelParams(kind=ChannelKind.SPONTANEOUS, gamma=1.0, tau=0.5)


@pytest.fixture
def thermal_params():
    return ChannelParams(kind=ChannelKind.THERMAL, gamma=1.0, nbar=1.0, tau=0.5)


@pytest.fixture
def driven_params():
    return ChannelParams(kind=ChannelKind.DRIVEN, gamma=1.0, v=4.0, tau=0.5)


@pytest.fixture
def sigma2_plus_op():
    """(|e⟩ + i|g⟩)(⟨e| − i⟨g|)/2."""
    return 0.5 * (identity() + pauli(2))


@pytest.fixture
def half_decay_tau():
    """τ with e^{−2Γτ} = ½ for Γ = 1."""
    return math.log(2.0) / 2.0
