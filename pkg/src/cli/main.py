"""
Command-line front end: retrodiction and posterior queries, figure data and the
self-check suite.

stdout carries only CSV/JSON payloads; logs and error messages go to stderr.
"""

import functools
from collections.abc import Callable
from pathlib import Path
from typing import Any, TypeVar, cast

import click
import numpy as np
from pydantic import ValidationError

from src.channels.models import ChannelParams
from src.checks.models import CheckReport
from src.checks.suite import run_checks
from src.config import CheckConfig, check_config, figure_defaults
from src.exceptions import (
    ConfigurationError,
    ImpossibleOutcomeError,
    IncompatibleEnsembleError,
    IntegrationCancelledError,
    InvalidParameterError,
    NonPhysicalOperatorError,
    NonUnitaryError,
    RetroAtomError,
    UnknownFigureError,
    UnnormalizableError,
)
from src.logging_config import get_logger, setup_logging
from src.models.base import ChannelKind, CurveDirection, OutputFormat
from src.qop_core.algebra import E, G
from src.qop_core.codec import operator_to_json
from src.qop_core.states import normalize_to_density
from src.retrodiction.posterior import forward_bayes, preparation_posterior
from src.retrodiction.retrodict import retrodict_open
from src.scenarios.figures import (
    ALL_SERIES,
    default_tau_grid,
    figure_data,
    figure_params,
    predictive_curve,
    resolve_figure,
    retrodictive_curve,
)
from src.scenarios.models import ScenarioCurve

from .config import CliConfig
from .output import emit, format_number, render

logger = get_logger(__name__)

F = TypeVar("F", bound=Callable[..., Any])

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_IMPOSSIBLE = 3

# First match wins, so subclasses must precede their bases
EXIT_CODES: list[tuple[type[Exception], int]] = [
    (ImpossibleOutcomeError, EXIT_IMPOSSIBLE),
    (IncompatibleEnsembleError, EXIT_IMPOSSIBLE),
    (InvalidParameterError, EXIT_USAGE),
    (UnnormalizableError, EXIT_USAGE),
    (NonUnitaryError, EXIT_USAGE),
    (UnknownFigureError, EXIT_USAGE),
    (ConfigurationError, EXIT_USAGE),
    (ValidationError, EXIT_USAGE),
    (NonPhysicalOperatorError, EXIT_FAILURE),
    (IntegrationCancelledError, EXIT_FAILURE),
    (RetroAtomError, EXIT_FAILURE),
]

# Retrodictive and forward-Bayes posteriors must agree to this for an exact channel
POSTERIOR_AGREEMENT_TOL = check_config.route_tol

CHANNEL_CHOICE = click.Choice([kind.value for kind in ChannelKind])
FORMAT_CHOICE = click.Choice([fmt.value for fmt in OutputFormat])


def exit_code_for(exc: Exception) -> int:
    for exc_type, code in EXIT_CODES:
        if isinstance(exc, exc_type):
            return code
    return EXIT_FAILURE


def handle_domain_errors(func: F) -> F:
    """Report domain and validation errors on stderr and exit with their mapped code."""

    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return func(*args, **kwargs)
        except (RetroAtomError, ValidationError) as exc:
            code = exit_code_for(exc)
            message = exc.message if isinstance(exc, RetroAtomError) else str(exc)
            logger.debug(f"{type(exc).__name__} -> exit {code}")
            click.echo(f"error: {message}", err=True)
            raise click.exceptions.Exit(code) from exc

    return cast(F, wrapper)


def _channel_decorators(with_tau: bool) -> list[Callable[[Any], Any]]:
    decorators = [
        click.option(
            "--channel",
            type=CHANNEL_CHOICE,
            default=ChannelKind.SPONTANEOUS.value,
            show_default=True,
            help="Environment of the atom.",
        ),
        click.option(
            "--gamma",
            type=float,
            default=1.0,
            show_default=True,
            help="Decay rate Γ (half the Einstein A-coefficient).",
        ),
        click.option(
            "--nbar",
            type=float,
            default=0.0,
            show_default=True,
            help="Mean thermal photon number (thermal channel).",
        ),
        click.option(
            "--v", "v", type=float, default=0.0, show_default=True, help="Rabi drive V (driven)."
        ),
        click.option(
            "--tau",
            type=float,
            default=0.0,
            show_default=True,
            help="Interval t_m - t_p between preparation and measurement.",
        ),
    ]
    return decorators if with_tau else decorators[:-1]


def _apply(func: F, decorators: list[Callable[[Any], Any]]) -> F:
    for decorator in reversed(decorators):
        func = decorator(func)
    return cast(F, func)


def channel_options(func: F) -> F:
    """--channel, --gamma, --nbar, --v and --tau."""
    return _apply(func, _channel_decorators(with_tau=True))


def grid_channel_options(func: F) -> F:
    """--channel, --gamma, --nbar and --v; τ comes from the grid."""
    return _apply(func, _channel_decorators(with_tau=False))


def output_options(func: F) -> F:
    """--format and --output."""
    func = click.option(
        "--output",
        type=click.Path(dir_okay=False, path_type=Path),
        default=None,
        help="Write to this file instead of stdout.",
    )(func)
    return click.option(
        "--format",
        "fmt",
        type=FORMAT_CHOICE,
        default=OutputFormat.CSV.value,
        show_default=True,
        help="Output serialization.",
    )(func)


def _cli_config(
    channel: str,
    gamma: float,
    nbar: float,
    v: float,
    tau: float,
    fmt: str,
    output: Path | None,
    pom: str = "excited",
    ensemble: str | None = None,
) -> CliConfig:
    params = ChannelParams(kind=ChannelKind(channel), gamma=gamma, nbar=nbar, v=v, tau=tau)
    return CliConfig(
        params=params, pom=pom, ensemble=ensemble, output=output, format=OutputFormat(fmt)
    )


def _curve_output(curve: ScenarioCurve, config_format: OutputFormat) -> str:
    payload: dict[str, Any] = {}
    if curve.figure is not None:
        payload["figure"] = curve.figure.value
    payload["columns"] = curve.columns()
    payload["rows"] = [list(row) for row in curve.rows()]
    return render(config_format, curve.columns(), curve.rows(), payload)


@click.group()
@click.option(
    "--log-level",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"], case_sensitive=False),
    default="WARNING",
    show_default=True,
    help="Logging level (stderr).",
)
@click.option(
    "--log-file",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="Also log to this file.",
)
@click.option("--json-config", type=click.Path(path_type=Path), default=None, hidden=True)
@handle_domain_errors
def cli(log_level: str, log_file: Path | None, json_config: Path | None) -> None:
    """Retrodictive density matrices and preparation probabilities for a two-level atom."""
    setup_logging(level=log_level, log_file=log_file)
    if json_config is not None:
        raise ConfigurationError("--json-config", str(json_config), "reserved; use flags")


@cli.command()
@channel_options
@click.option(
    "--pom",
    default="excited",
    show_default=True,
    help="Measured outcome: preset name or JSON operator.",
)
@output_options
@handle_domain_errors
def retrodict(
    channel: str,
    gamma: float,
    nbar: float,
    v: float,
    tau: float,
    pom: str,
    fmt: str,
    output: Path | None,
) -> None:
    """Retrodictive density matrix at the preparation time."""
    config = _cli_config(channel, gamma, nbar, v, tau, fmt, output, pom=pom)
    logger.info(f"retrodict: {config.params.kind.value}, gamma_tau={config.params.gamma_tau}")
    result = retrodict_open(config.params, config.pom_element())
    op = result.rho_retr.op

    rows = [
        ("rho_ee", float(op[E, E].real), float(op[E, E].imag)),
        ("rho_eg", float(op[E, G].real), float(op[E, G].imag)),
        ("rho_ge", float(op[G, E].real), float(op[G, E].imag)),
        ("rho_gg", float(op[G, G].real), float(op[G, G].imag)),
        ("normalization", result.normalization, 0.0),
    ]
    payload = {
        "channel": config.params.model_dump(mode="json"),
        "pom": config.pom,
        "rho_retr": operator_to_json(op),
        "normalization": result.normalization,
    }
    emit(render(config.format, ["element", "re", "im"], rows, payload), config.output)


@cli.command()
@channel_options
@click.option(
    "--pom",
    default="excited",
    show_default=True,
    help="Measured outcome: preset name or JSON operator.",
)
@click.option(
    "--ensemble",
    default="unbiased-eg",
    show_default=True,
    help="Preparation ensemble: preset name or JSON {label: operator}.",
)
@output_options
@handle_domain_errors
def posterior(
    channel: str,
    gamma: float,
    nbar: float,
    v: float,
    tau: float,
    pom: str,
    ensemble: str,
    fmt: str,
    output: Path | None,
) -> None:
    """Preparation probabilities P(p|m), retrodictive and by forward Bayes."""
    config = _cli_config(channel, gamma, nbar, v, tau, fmt, output, pom=pom, ensemble=ensemble)
    logger.info(f"posterior: {config.params.kind.value}, ensemble={config.ensemble}")
    pom_element = config.pom_element()
    prep_ensemble = config.preparation_ensemble()

    result = retrodict_open(config.params, pom_element)
    retro = preparation_posterior(result.rho_retr, prep_ensemble)
    bayes = forward_bayes(config.params, prep_ensemble, pom_element)
    deviation = retro.max_deviation(bayes)
    if deviation > POSTERIOR_AGREEMENT_TOL:
        raise NonPhysicalOperatorError(
            "PreparationPosterior",
            f"retrodictive and forward-Bayes posteriors differ by {deviation:.3e}",
            {"deviation": deviation},
        )

    theirs = bayes.as_dict()
    rows: list[tuple[str, float | str, float | str]] = [
        (label, probability, theirs[label]) for label, probability in retro.entries
    ]
    rows.append(("max_deviation", deviation, deviation))
    payload = {
        "retrodictive": retro.as_dict(),
        "forward_bayes": theirs,
        "max_deviation": deviation,
    }
    emit(
        render(config.format, ["label", "retrodictive", "forward_bayes"], rows, payload),
        config.output,
    )


@cli.command()
@click.argument("figure_id")
@click.option(
    "--points",
    type=int,
    default=figure_defaults.points,
    show_default=True,
    help="Number of τ samples.",
)
@click.option(
    "--tau-max",
    type=float,
    default=None,
    help="Largest Γτ on the grid [default: 6 for figure 1, 5 otherwise].",
)
@click.option("--gamma", type=float, default=figure_defaults.gamma, show_default=True)
@click.option("--nbar", type=float, default=figure_defaults.nbar, show_default=True)
@click.option("--v", "v", type=float, default=figure_defaults.v, show_default=True)
@output_options
@handle_domain_errors
def figure(
    figure_id: str,
    points: int,
    tau_max: float | None,
    gamma: float,
    nbar: float,
    v: float,
    fmt: str,
    output: Path | None,
) -> None:
    """Data behind one figure panel (1a through 4b)."""
    figure_key = resolve_figure(figure_id)
    params = figure_params(figure_key, gamma=gamma, nbar=nbar, v=v)
    grid = default_tau_grid(figure_key, points=points, gamma=gamma, gamma_tau_max=tau_max)
    curve = figure_data(figure_key, params, grid)
    emit(_curve_output(curve, OutputFormat(fmt)), output)


@cli.command()
@click.option(
    "--direction",
    type=click.Choice([d.value for d in CurveDirection]),
    default=CurveDirection.RETRODICTIVE.value,
    show_default=True,
)
@grid_channel_options
@click.option(
    "--state",
    default="excited",
    show_default=True,
    help="Prepared state (predictive) or measured outcome (retrodictive).",
)
@click.option("--points", type=int, default=figure_defaults.points, show_default=True)
@click.option(
    "--tau-max",
    type=float,
    default=figure_defaults.driven_gamma_tau_max,
    show_default=True,
    help="Largest Γτ on the grid.",
)
@output_options
@handle_domain_errors
def curve(
    direction: str,
    channel: str,
    gamma: float,
    nbar: float,
    v: float,
    state: str,
    points: int,
    tau_max: float,
    fmt: str,
    output: Path | None,
) -> None:
    """All matrix elements against τ for any state or outcome."""
    config = _cli_config(channel, gamma, nbar, v, 0.0, fmt, output, pom=state)
    if points < 2:
        raise InvalidParameterError("curve", "points", points, "must be at least 2")
    if not tau_max > 0:
        raise InvalidParameterError("curve", "tau_max", tau_max, "must be positive")
    grid = [float(t) for t in np.linspace(0.0, tau_max, points) / config.params.gamma]

    element = config.pom_element()
    if CurveDirection(direction) == CurveDirection.PREDICTIVE:
        data = predictive_curve(config.params, normalize_to_density(element.op), grid)
    else:
        data = retrodictive_curve(config.params, element, grid)
    emit(_curve_output(data.select(ALL_SERIES), config.format), config.output)


def _report_text(report: CheckReport) -> str:
    lines = [f"{'check':<32} {'status':<6} {'measured':>14} {'tolerance':>10}"]
    for result in report.results:
        status = "PASS" if result.passed else "FAIL"
        lines.append(
            f"{result.name:<32} {status:<6} {format_number(result.measured):>14} "
            f"{result.tolerance:>10.1e}"
        )
        if not result.passed and result.detail:
            lines.append(f"    {result.detail}")

    lines.append("")
    lines.append(f"{'transcription audit':<32} {'status':<6} {'deviation':>14} {'tolerance':>10}")
    for finding in report.findings:
        status = "ok" if finding.matches else "DIFF"
        lines.append(
            f"{finding.name:<32} {status:<6} {format_number(finding.max_deviation):>14} "
            f"{finding.tolerance:>10.1e}"
        )

    lines.append("")
    if report.passed:
        lines.append(f"all {len(report.results)} checks passed")
    else:
        lines.append(f"FAILED: {', '.join(report.failed_names)}")
    return "\n".join(lines) + "\n"


@cli.command()
@click.option("--json", "as_json", is_flag=True, help="Machine-readable report.")
@click.option("--output", type=click.Path(dir_okay=False, path_type=Path), default=None)
@handle_domain_errors
def check(as_json: bool, output: Path | None) -> None:
    """Run the self-verification suite; exit 1 if any invariant fails."""
    report = run_checks(CheckConfig.from_env())
    if as_json:
        text = report.model_dump_json(indent=2) + "\n"
    else:
        text = _report_text(report)
    emit(text, output)
    if not report.passed:
        raise click.exceptions.Exit(EXIT_FAILURE)


def main() -> None:
    cli(prog_name="retroatom")
