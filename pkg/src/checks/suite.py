"""
Self-verification suite behind ``retroatom check``.

Every check compares two independent computations and reports the largest
deviation seen against a tolerance from ``CheckConfig``. Random cases come from a
seeded numpy generator, so a report is reproducible for a given config.

Checks that exercise the exact channel take it from ``superoperator_builder``;
the default is resolved from this module at call time so a corrupted builder
can be injected as a negative control.
"""

import math
from collections.abc import Callable

import numpy as np

from src.channels.lindblad import rk4_superoperators
from src.channels.models import ChannelParams, Superoperator
from src.channels.superoperator import adjoint, apply, build_superoperator, choi_matrix, compose
from src.config import CheckConfig, check_config
from src.exceptions import RetroAtomError
from src.logging_config import get_check_logger, log_check_result
from src.models.base import ChannelKind
from src.qop_core.algebra import Operator2, dagger, identity, max_abs, pauli
from src.qop_core.models import BlochVector, PomElement, PreparationEnsemble
from src.qop_core.states import (
    eg_pom_set,
    excited_projector,
    ground_projector,
    plus_projector,
    projector_theta,
    unbiased_ensemble,
)
from src.retrodiction.posterior import forward_bayes, prep_prob_direct, preparation_posterior
from src.retrodiction.retrodict import retrodict_open, retrodict_pauli
from src.scenarios.driven import driven_bloch, driven_retro_excited, driven_retro_sigma1
from src.scenarios.figures import figure_data, figure_params, retrodictive_curve
from src.scenarios.spontaneous import (
    spont_prep_probs,
    spont_retro_elements,
    spont_retro_theta,
    superposition_posterior,
)
from src.scenarios.thermal import thermal_retro_elements

from .audit import run_transcription_audit
from .models import CheckReport, CheckResult

logger = get_check_logger()

SuperoperatorBuilder = Callable[[ChannelParams], Superoperator]
CheckFn = Callable[["CheckContext"], tuple[float, int]]

SPONTANEOUS, THERMAL, DRIVEN = ChannelKind.SPONTANEOUS, ChannelKind.THERMAL, ChannelKind.DRIVEN
KINDS = (SPONTANEOUS, THERMAL, DRIVEN)

# Γτ values at which a detection in |e⟩ must still retrodict |e⟩
EXCITED_OUTCOME_GAMMA_TAUS = (0.0, 0.1, 1.0, 10.0, 30.0)

# Drive V = 4Γ used throughout the driven figures
FIGURE_DRIVE = 4.0


def random_density(rng: np.random.Generator) -> Operator2:
    """Random full-rank density matrix AA†/Tr(AA†)."""
    a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    op = a @ dagger(a)
    op = 0.5 * (op + dagger(op))
    return op / np.trace(op).real


def random_pom(rng: np.random.Generator, label: str = "random") -> PomElement:
    return PomElement(op=rng.uniform(0.2, 1.0) * random_density(rng), label=label)


def random_ensemble(rng: np.random.Generator) -> PreparationEnsemble:
    count = int(rng.integers(2, 4))
    weights = rng.dirichlet(np.ones(count))
    return PreparationEnsemble(
        items=[(f"p{index}", weight * random_density(rng)) for index, weight in enumerate(weights)]
    )


def random_params(
    rng: np.random.Generator, kind: ChannelKind, gamma_tau_max: float
) -> ChannelParams:
    gamma = float(rng.uniform(0.5, 2.0))
    return ChannelParams(
        kind=kind,
        gamma=gamma,
        nbar=float(rng.uniform(0.0, 3.0)),
        v=float(rng.uniform(0.0, 6.0)) * gamma,
        tau=float(rng.uniform(0.0, gamma_tau_max)) / gamma,
    )


def named_poms() -> list[PomElement]:
    """Detections in |e⟩, |g⟩, |+⟩, (|e⟩ + i|g⟩)/√2 and |θ = 1⟩."""
    return [
        PomElement(op=excited_projector(), label="excited"),
        PomElement(op=ground_projector(), label="ground"),
        PomElement(op=plus_projector(), label="plus"),
        PomElement(op=0.5 * (identity() + pauli(2)), label="sigma2-plus"),
        projector_theta(1.0, label="theta:1.0"),
    ]


class CheckContext:
    """Shared inputs of one suite run."""

    def __init__(self, config: CheckConfig, builder: SuperoperatorBuilder):
        self.config = config
        self.builder = builder
        self.rng = np.random.default_rng(config.seed)
        self.cases = [
            (
                random_params(
                    self.rng, KINDS[index % len(KINDS)], config.retrodiction_gamma_tau_max
                ),
                random_pom(self.rng),
                random_ensemble(self.rng),
            )
            for index in range(config.random_cases)
        ]

    def grid(self, gamma_tau_max: float | None = None) -> np.ndarray:
        upper = self.config.oracle_gamma_tau_max if gamma_tau_max is None else gamma_tau_max
        return np.linspace(0.0, upper, self.config.grid_points)

    def retrodict(self, params: ChannelParams, pom: PomElement) -> Operator2:
        return retrodict_open(params, pom, self.builder(params)).rho_retr.op


# Route and method equivalence


def _bayes_equivalence(ctx: CheckContext) -> tuple[float, int]:
    worst = 0.0
    for params, pom, ensemble in ctx.cases:
        channel = ctx.builder(params)
        retro = preparation_posterior(retrodict_open(params, pom, channel).rho_retr, ensemble)
        worst = max(worst, retro.max_deviation(forward_bayes(params, ensemble, pom, channel)))
    return worst, len(ctx.cases)


def _bayes_equivalence_rk4(ctx: CheckContext) -> tuple[float, int]:
    oracles = rk4_superoperators([params for params, _, _ in ctx.cases], ctx.config.rk4_steps)
    worst = 0.0
    for (params, pom, ensemble), oracle in zip(ctx.cases, oracles, strict=True):
        retro = preparation_posterior(
            retrodict_open(params, pom, ctx.builder(params)).rho_retr, ensemble
        )
        worst = max(worst, retro.max_deviation(forward_bayes(params, ensemble, pom, oracle)))
    return worst, len(ctx.cases)


def _method_equivalence(ctx: CheckContext) -> tuple[float, int]:
    worst = 0.0
    for params, pom, _ in ctx.cases:
        channel = ctx.builder(params)
        adjoint_route = retrodict_open(params, pom, channel)
        pauli_route = retrodict_pauli(params, pom, channel)
        worst = max(
            worst,
            max_abs(adjoint_route.rho_retr.op - pauli_route.rho_retr.op),
            abs(adjoint_route.normalization - pauli_route.normalization)
            / adjoint_route.normalization,
        )
    return worst, len(ctx.cases)


def _pom_scale_invariance(ctx: CheckContext) -> tuple[float, int]:
    worst = 0.0
    for params, pom, _ in ctx.cases:
        factor = float(ctx.rng.uniform(0.1, 10.0))
        channel = ctx.builder(params)
        base = retrodict_open(params, pom, channel)
        scaled = retrodict_open(params, pom.scaled(factor), channel)
        worst = max(
            worst,
            max_abs(base.rho_retr.op - scaled.rho_retr.op),
            abs(scaled.normalization / (factor * base.normalization) - 1.0),
        )
    return worst, len(ctx.cases)


def _posterior_normalization(ctx: CheckContext) -> tuple[float, int]:
    worst = 0.0
    for params, pom, ensemble in ctx.cases:
        channel = ctx.builder(params)
        for posterior in (
            preparation_posterior(retrodict_open(params, pom, channel).rho_retr, ensemble),
            forward_bayes(params, ensemble, pom, channel),
        ):
            worst = max(worst, abs(math.fsum(posterior.as_dict().values()) - 1.0))
    return worst, 2 * len(ctx.cases)


# Anchors and limits


def _tau_zero_anchor(ctx: CheckContext) -> tuple[float, int]:
    worst = 0.0
    cases = 0
    for kind in KINDS:
        for _ in range(ctx.config.tau_zero_poms):
            params = random_params(ctx.rng, kind, 1.0).at_tau(0.0)
            pom = random_pom(ctx.rng)
            expected = pom.op / np.trace(pom.op).real
            worst = max(worst, max_abs(ctx.retrodict(params, pom) - expected))
            cases += 1
    return worst, cases


def _spontaneous_half_decay(ctx: CheckContext) -> tuple[float, int]:
    """e^{−2Γτ} = ½ gives P(e|g) = 1/3 by three routes."""
    gamma = 1.0
    half_decay_tau = math.log(2.0) / (2.0 * gamma)
    params = ChannelParams(kind=ChannelKind.SPONTANEOUS, gamma=gamma, tau=half_decay_tau)
    pom = PomElement(op=ground_projector(), label="g")
    expected = {"e": 1.0 / 3.0, "g": 2.0 / 3.0}

    closed = dict(zip(("e", "g"), spont_prep_probs(gamma, params.tau), strict=True))
    direct = prep_prob_direct(params, pom, eg_pom_set().elements).as_dict()
    retro = preparation_posterior(
        retrodict_open(params, pom, ctx.builder(params)).rho_retr, unbiased_ensemble(eg_pom_set())
    ).as_dict()
    worst = max(
        abs(route[label] - expected[label])
        for route in (closed, direct, retro)
        for label in expected
    )
    return worst, 3


def _spontaneous_limits(ctx: CheckContext) -> tuple[float, int]:
    """τ = 0 gives (0, 1); Γτ = 30 gives (½, ½)."""
    gamma = 1.0
    worst = 0.0
    for gamma_tau, expected in ((0.0, (0.0, 1.0)), (ctx.config.long_gamma_tau, (0.5, 0.5))):
        params = ChannelParams(kind=ChannelKind.SPONTANEOUS, gamma=gamma, tau=gamma_tau / gamma)
        pom = PomElement(op=ground_projector(), label="g")
        direct = prep_prob_direct(params, pom, eg_pom_set().elements)
        closed = spont_prep_probs(gamma, params.tau)
        worst = max(
            worst,
            abs(direct.probability("e") - expected[0]),
            abs(direct.probability("g") - expected[1]),
            abs(closed[0] - expected[0]),
            abs(closed[1] - expected[1]),
        )
    return worst, 2


def _excited_outcome_exception(ctx: CheckContext) -> tuple[float, int]:
    worst = 0.0
    pom = PomElement(op=excited_projector(), label="e")
    ensemble = unbiased_ensemble(eg_pom_set())
    for gamma_tau in EXCITED_OUTCOME_GAMMA_TAUS:
        params = ChannelParams(kind=ChannelKind.SPONTANEOUS, gamma=1.0, tau=gamma_tau)
        result = retrodict_open(params, pom, ctx.builder(params))
        posterior = preparation_posterior(result.rho_retr, ensemble)
        worst = max(
            worst,
            max_abs(result.rho_retr.op - excited_projector()),
            abs(posterior.probability("e") - 1.0),
            abs(posterior.probability("g")),
        )
    return worst, len(EXCITED_OUTCOME_GAMMA_TAUS)


def _no_information(kind: ChannelKind) -> CheckFn:
    def check(ctx: CheckContext) -> tuple[float, int]:
        params = ChannelParams(
            kind=kind, gamma=1.0, nbar=1.0, v=FIGURE_DRIVE, tau=ctx.config.long_gamma_tau
        )
        poms = named_poms()
        worst = max(max_abs(ctx.retrodict(params, pom) - 0.5 * identity()) for pom in poms)
        return worst, len(poms)

    return check


def _thermal_steady_ratio(ctx: CheckContext) -> tuple[float, int]:
    nbar = 1.0
    params = ChannelParams(
        kind=ChannelKind.THERMAL, gamma=1.0, nbar=nbar, tau=ctx.config.long_gamma_tau
    )
    rho = apply(ctx.builder(params), excited_projector())
    ratio = rho[0, 0].real / rho[1, 1].real
    return abs(ratio - nbar / (1.0 + nbar)), 1


# Channel properties


def _oracle_equivalence(kind: ChannelKind) -> CheckFn:
    def check(ctx: CheckContext) -> tuple[float, int]:
        params_list = [
            random_params(ctx.rng, kind, ctx.config.oracle_gamma_tau_max)
            for _ in range(ctx.config.oracle_cases_per_channel)
        ]
        oracles = rk4_superoperators(params_list, ctx.config.rk4_steps)
        worst = max(
            max_abs(ctx.builder(params).matrix - oracle.matrix)
            for params, oracle in zip(params_list, oracles, strict=True)
        )
        return worst, len(params_list)

    return check


def _semigroup(ctx: CheckContext) -> tuple[float, int]:
    worst = 0.0
    cases = 0
    for kind in KINDS:
        for _ in range(ctx.config.oracle_cases_per_channel):
            params = random_params(ctx.rng, kind, ctx.config.oracle_gamma_tau_max)
            first = float(ctx.rng.uniform(0.0, params.tau))
            second = params.tau - first
            joined = compose(ctx.builder(params.at_tau(second)), ctx.builder(params.at_tau(first)))
            worst = max(worst, max_abs(ctx.builder(params).matrix - joined.matrix))
            cases += 1
    return worst, cases


def _trace_preservation(ctx: CheckContext) -> tuple[float, int]:
    worst = 0.0
    for params, _, _ in ctx.cases:
        channel = ctx.builder(params)
        rho = random_density(ctx.rng)
        worst = max(
            worst,
            max_abs(apply(adjoint(channel), identity()) - identity()),
            abs(np.trace(apply(channel, rho)) - 1.0),
        )
    return worst, len(ctx.cases)


def _hermiticity_preservation(ctx: CheckContext) -> tuple[float, int]:
    worst = 0.0
    for params, _, _ in ctx.cases:
        a = ctx.rng.normal(size=(2, 2)) + 1j * ctx.rng.normal(size=(2, 2))
        image = apply(ctx.builder(params), a + dagger(a))
        worst = max(worst, max_abs(image - dagger(image)))
    return worst, len(ctx.cases)


def _complete_positivity(ctx: CheckContext) -> tuple[float, int]:
    worst = 0.0
    for params, _, _ in ctx.cases:
        choi = choi_matrix(ctx.builder(params))
        lowest = float(np.linalg.eigvalsh(0.5 * (choi + choi.conj().T))[0])
        worst = max(worst, -lowest)
    return worst, len(ctx.cases)


def _driven_continuity(ctx: CheckContext) -> tuple[float, int]:
    """Entries stay continuous through the critical drive V = Γ/2."""
    gamma = 1.0
    critical = 0.5 * gamma
    b0 = BlochVector(u=0.0, v=0.0, w=1.0)
    worst = 0.0
    cases = 0
    for gamma_tau in ctx.grid()[1:]:
        tau = gamma_tau / gamma
        base = ChannelParams(kind=ChannelKind.DRIVEN, gamma=gamma, v=critical, tau=tau)
        at_critical = ctx.builder(base).matrix
        for offset in (-1e-6, 1e-6):
            v = critical + offset
            near = ChannelParams(kind=ChannelKind.DRIVEN, gamma=gamma, v=v, tau=tau)
            worst = max(
                worst,
                max_abs(ctx.builder(near).matrix - at_critical),
                max_abs(
                    driven_retro_excited(gamma, v, tau) - driven_retro_excited(gamma, critical, tau)
                ),
                float(
                    np.max(
                        np.abs(
                            driven_bloch(b0, gamma, v, tau).as_array()
                            - driven_bloch(b0, gamma, critical, tau).as_array()
                        )
                    )
                ),
            )
            cases += 1
    return worst, cases


def _thermal_zero_nbar(ctx: CheckContext) -> tuple[float, int]:
    worst = 0.0
    grid = ctx.grid()
    for gamma_tau in grid:
        thermal = ChannelParams(kind=ChannelKind.THERMAL, gamma=1.0, nbar=1e-12, tau=gamma_tau)
        spontaneous = ChannelParams(kind=ChannelKind.SPONTANEOUS, gamma=1.0, tau=gamma_tau)
        worst = max(worst, max_abs(ctx.builder(thermal).matrix - ctx.builder(spontaneous).matrix))
    return worst, len(grid)


# Closed forms against the general machinery


def _driven_sigma1_exact(ctx: CheckContext) -> tuple[float, int]:
    pom = PomElement(op=0.5 * (identity() + pauli(1)), label="sigma1-plus")
    grid = ctx.grid()
    worst = 0.0
    for gamma_tau in grid:
        params = ChannelParams(kind=ChannelKind.DRIVEN, gamma=1.0, v=FIGURE_DRIVE, tau=gamma_tau)
        expected = driven_retro_sigma1(params.gamma, params.v, params.tau)
        worst = max(worst, max_abs(ctx.retrodict(params, pom) - expected))
    return worst, len(grid)


def _scenario_spontaneous(ctx: CheckContext) -> tuple[float, int]:
    poms = [*named_poms(), random_pom(ctx.rng)]
    thetas = (0.3, np.pi / 3, np.pi / 2, 2.0)
    worst = 0.0
    cases = 0
    for gamma_tau in ctx.grid():
        params = ChannelParams(kind=ChannelKind.SPONTANEOUS, gamma=1.0, tau=gamma_tau)
        for pom in poms:
            closed = spont_retro_elements(pom, params.gamma, params.tau)
            worst = max(worst, max_abs(closed - ctx.retrodict(params, pom)))
            cases += 1
        for theta in thetas:
            closed = spont_retro_theta(theta, params.gamma, params.tau)
            worst = max(worst, max_abs(closed - ctx.retrodict(params, projector_theta(theta))))
            cases += 1
    return worst, cases


def _scenario_thermal(ctx: CheckContext) -> tuple[float, int]:
    poms = [*named_poms(), random_pom(ctx.rng)]
    worst = 0.0
    cases = 0
    for nbar in (0.5, 1.0, 2.0):
        for gamma_tau in ctx.grid():
            params = ChannelParams(kind=ChannelKind.THERMAL, gamma=1.0, nbar=nbar, tau=gamma_tau)
            for pom in poms:
                closed = thermal_retro_elements(pom, params.gamma, nbar, params.tau)
                worst = max(worst, max_abs(closed - ctx.retrodict(params, pom)))
                cases += 1
    return worst, cases


def _scenario_superposition(ctx: CheckContext) -> tuple[float, int]:
    worst = 0.0
    cases = 0
    for theta in (np.pi / 3, np.pi / 2, 2.0):
        pom = projector_theta(theta)
        for p in (0.25, 0.5, 0.75):
            ensemble = PreparationEnsemble(
                items=[("e", p * excited_projector()), ("+", (1.0 - p) * plus_projector())]
            )
            for gamma_tau in ctx.grid():
                params = ChannelParams(kind=ChannelKind.SPONTANEOUS, gamma=1.0, tau=gamma_tau)
                oracle = forward_bayes(params, ensemble, pom, ctx.builder(params))
                closed = superposition_posterior(theta, p, params.gamma, params.tau)
                worst = max(
                    worst,
                    abs(closed[0] - oracle.probability("e")),
                    abs(closed[1] - oracle.probability("+")),
                )
                cases += 1
    return worst, cases


def _figure_anchors(ctx: CheckContext) -> tuple[float, int]:
    """Fig 3b starts at ½ on the diagonal; Fig 2d coherences are imaginary and opposite."""
    params = figure_params("3b")
    grid = [float(t) for t in ctx.grid()]
    fig_3b = figure_data("3b", params, grid)
    worst = max(abs(fig_3b.series["rho_ee"][0] - 0.5), abs(fig_3b.series["rho_gg"][0] - 0.5))

    pom = PomElement(op=excited_projector(), label="excited")
    full = retrodictive_curve(params, pom, grid)
    for index in range(len(grid)):
        worst = max(
            worst,
            abs(full.series["re_rho_eg"][index]),
            abs(full.series["re_rho_ge"][index]),
            abs(full.series["im_rho_eg"][index] + full.series["im_rho_ge"][index]),
        )
    return worst, len(grid) + 1


def _retrodictive_long_time(ctx: CheckContext) -> tuple[float, int]:
    long_tau = ctx.config.long_gamma_tau
    worst = 0.0
    figures = ("1b", "2b", "2d", "3b", "3d", "4a", "4b")
    for figure in figures:
        curve = figure_data(figure, figure_params(figure), [0.0, long_tau])
        for name, values in curve.series.items():
            expected = 0.5 if name in ("rho_ee", "rho_gg") else 0.0
            worst = max(worst, abs(values[-1] - expected))
    return worst, len(figures)


CHECKS: list[tuple[str, str, CheckFn]] = [
    ("bayes_equivalence", "route_tol", _bayes_equivalence),
    ("bayes_equivalence_rk4", "oracle_tol", _bayes_equivalence_rk4),
    ("method_equivalence", "method_tol", _method_equivalence),
    ("pom_scale_invariance", "method_tol", _pom_scale_invariance),
    ("posterior_normalization", "route_tol", _posterior_normalization),
    ("tau_zero_anchor", "anchor_tol", _tau_zero_anchor),
    ("spontaneous_half_decay", "anchor_tol", _spontaneous_half_decay),
    ("spontaneous_limits", "long_time_tol", _spontaneous_limits),
    ("excited_outcome_exception", "anchor_tol", _excited_outcome_exception),
    ("no_information_thermal", "no_information_tol", _no_information(THERMAL)),
    ("no_information_driven", "no_information_tol", _no_information(DRIVEN)),
    ("thermal_steady_ratio", "no_information_tol", _thermal_steady_ratio),
    ("oracle_equivalence_spontaneous", "oracle_tol", _oracle_equivalence(SPONTANEOUS)),
    ("oracle_equivalence_thermal", "oracle_tol", _oracle_equivalence(THERMAL)),
    ("oracle_equivalence_driven", "oracle_tol", _oracle_equivalence(DRIVEN)),
    ("semigroup", "semigroup_tol", _semigroup),
    ("trace_preservation", "channel_property_tol", _trace_preservation),
    ("hermiticity_preservation", "channel_property_tol", _hermiticity_preservation),
    ("complete_positivity", "channel_property_tol", _complete_positivity),
    ("driven_continuity", "continuity_tol", _driven_continuity),
    ("thermal_zero_nbar", "channel_property_tol", _thermal_zero_nbar),
    ("driven_sigma1_exact", "route_tol", _driven_sigma1_exact),
    ("scenario_spontaneous", "method_tol", _scenario_spontaneous),
    ("scenario_thermal", "method_tol", _scenario_thermal),
    ("scenario_superposition", "route_tol", _scenario_superposition),
    ("figure_anchors", "route_tol", _figure_anchors),
    ("retrodictive_long_time", "no_information_tol", _retrodictive_long_time),
]


def _evaluate(name: str, tolerance: float, check: CheckFn, ctx: CheckContext) -> CheckResult:
    try:
        measured, cases = check(ctx)
    except RetroAtomError as exc:
        logger.error(f"[Check {name}] raised {type(exc).__name__}: {exc.message}")
        return CheckResult(
            name=name, passed=False, measured=math.inf, tolerance=tolerance, detail=exc.message
        )

    passed = bool(measured <= tolerance)
    log_check_result(logger, name, passed, measured, tolerance, cases=cases)
    return CheckResult(
        name=name, passed=passed, measured=float(measured), tolerance=tolerance, cases=cases
    )


def run_checks(
    config: CheckConfig | None = None,
    superoperator_builder: SuperoperatorBuilder | None = None,
) -> CheckReport:
    """
    Run every invariant plus the transcription audit.

    Args:
        config: Suite configuration; defaults to ``check_config``
        superoperator_builder: Exact-channel constructor under test; defaults to
            ``build_superoperator``

    Returns:
        CheckReport whose ``passed`` depends on the invariants only
    """
    config = config or check_config
    builder = superoperator_builder or build_superoperator
    ctx = CheckContext(config, builder)

    logger.info(
        f"Running {len(CHECKS)} checks (seed={config.seed}, scale={config.tolerance_scale})"
    )
    results = [
        _evaluate(name, config.tol(tol_name), check, ctx) for name, tol_name, check in CHECKS
    ]
    findings = run_transcription_audit(config)

    report = CheckReport(results=results, findings=findings)
    logger.info(
        f"Checks finished: {len(results) - len(report.failed_names)}/{len(results)} passed, "
        f"{len(report.discrepancies)} audit discrepancies"
    )
    return report
