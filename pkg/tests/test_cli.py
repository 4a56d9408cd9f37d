"""Tests for the retroatom command line."""

import csv
import importlib
import io
import json
import logging
import math
from pathlib import Path

import pytest
from click.testing import CliRunner

from src.channels.models import ChannelParams
from src.checks import suite
from src.cli.main import EXIT_FAILURE, EXIT_IMPOSSIBLE, EXIT_USAGE, cli, exit_code_for
from src.cli.output import format_number, render_csv
from src.cli.presets import parse_ensemble, parse_pom
from src.exceptions import (
    ConfigurationError,
    ImpossibleOutcomeError,
    IncompatibleEnsembleError,
    InvalidParameterError,
    NonPhysicalOperatorError,
    RetroAtomError,
)
from src.models.base import ChannelKind, FigureId

from .fixtures import stretched_thermal

GOLDENS = Path(__file__).parent / "goldens"
# Goldens carry 12 significant digits from an independent evaluation of each channel
GOLDEN_TOL = 1e-9
# The package re-exports ``main``, so the module is fetched by name
CLI_MODULE = importlib.import_module("src.cli.main")
HALF_DECAY_TAU = repr(math.log(2.0) / 2.0)
GROUND_ONLY = '{"g": {"ee": [0, 0], "eg": [0, 0], "ge": [0, 0], "gg": [1, 0]}}'


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture(autouse=True)
def restore_root_logging():
    """``cli`` reconfigures the root logger; put the test run's handlers back."""
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


def _table(text: str) -> list[list[str]]:
    return list(csv.reader(io.StringIO(text)))


def _elements(text: str) -> dict[str, complex]:
    rows = _table(text)
    assert rows[0] == ["element", "re", "im"]
    return {name: complex(float(re), float(im)) for name, re, im in rows[1:]}


class TestRetrodictCommand:
    """``retroatom retrodict``."""

    def test_tau_zero_returns_normalized_pom(self, runner):
        result = runner.invoke(cli, ["retrodict", "--pom", "ground"])
        assert result.exit_code == 0, result.stderr
        values = _elements(result.stdout)
        assert values["rho_ee"] == 0
        assert values["rho_gg"] == 1
        assert values["normalization"] == 1

    def test_half_decay(self, runner):
        result = runner.invoke(cli, ["retrodict", "--pom", "ground", "--tau", HALF_DECAY_TAU])
        assert result.exit_code == 0, result.stderr
        values = _elements(result.stdout)
        assert values["rho_ee"].real == pytest.approx(1 / 3, abs=1e-11)
        assert values["rho_gg"].real == pytest.approx(2 / 3, abs=1e-11)
        assert values["normalization"].real == pytest.approx(1.5, abs=1e-11)

    def test_driven_long_time_is_half(self, runner):
        args = ["retrodict", "--channel", "driven", "--v", "4", "--tau", "30", "--pom", "plus"]
        result = runner.invoke(cli, args)
        assert result.exit_code == 0, result.stderr
        values = _elements(result.stdout)
        assert values["rho_ee"].real == pytest.approx(0.5, abs=1e-8)
        assert abs(values["rho_eg"]) == pytest.approx(0.0, abs=1e-8)

    def test_json_output(self, runner):
        result = runner.invoke(cli, ["retrodict", "--pom", "sigma2-plus", "--format", "json"])
        assert result.exit_code == 0, result.stderr
        payload = json.loads(result.stdout)
        assert payload["pom"] == "sigma2-plus"
        assert payload["channel"]["kind"] == "spontaneous"
        assert payload["rho_retr"]["eg"] == [0, -0.5]
        assert payload["normalization"] == 1

    def test_inline_json_pom(self, runner):
        pom = '{"ee": [0.5, 0], "eg": [0.5, 0], "ge": [0.5, 0], "gg": [0.5, 0]}'
        result = runner.invoke(cli, ["retrodict", "--pom", pom, "--tau", "1"])
        assert result.exit_code == 0, result.stderr
        assert _elements(result.stdout)["rho_eg"].real > 0

    def test_output_file(self, runner, tmp_path):
        target = tmp_path / "out" / "retro.csv"
        result = runner.invoke(cli, ["retrodict", "--output", str(target)])
        assert result.exit_code == 0, result.stderr
        assert result.stdout == ""
        assert target.read_bytes().startswith(b"element,re,im\n")

    def test_impossible_outcome_exit_code(self, runner):
        result = runner.invoke(cli, ["retrodict", "--pom", "excited", "--tau", "400"])
        assert result.exit_code == EXIT_IMPOSSIBLE
        assert "impossible outcome" in result.stderr
        assert result.stdout == ""

    @pytest.mark.parametrize(
        "args",
        [
            ["retrodict", "--gamma", "0"],
            ["retrodict", "--tau", "-1"],
            ["retrodict", "--pom", "sideways"],
            ["retrodict", "--pom", "theta:abc"],
            ["retrodict", "--pom", '{"ee": [1, 0]}'],
        ],
    )
    def test_invalid_input_exit_code(self, runner, args):
        result = runner.invoke(cli, args)
        assert result.exit_code == EXIT_USAGE
        assert result.stderr.startswith("error:")

    @pytest.mark.parametrize(
        "pom",
        [
            '{"ee": [-1, 0], "eg": [0, 0], "ge": [0, 0], "gg": [1, 0]}',
            '{"ee": [1, 0], "eg": [2, 0], "ge": [2, 0], "gg": [1, 0]}',
        ],
    )
    def test_non_physical_pom_is_usage_error(self, runner, pom):
        result = runner.invoke(cli, ["retrodict", "--pom", pom])
        assert result.exit_code == EXIT_USAGE
        assert "non-physical operator" in result.stderr

    def test_logs_go_to_stderr(self, runner):
        result = runner.invoke(cli, ["--log-level", "info", "retrodict"])
        assert result.exit_code == 0
        assert "retrodict:" in result.stderr
        assert result.stdout.startswith("element,re,im\n")


class TestPosteriorCommand:
    """``retroatom posterior``."""

    def test_half_decay_unbiased_source(self, runner):
        result = runner.invoke(cli, ["posterior", "--pom", "ground", "--tau", HALF_DECAY_TAU])
        assert result.exit_code == 0, result.stderr
        rows = _table(result.stdout)
        assert rows[0] == ["label", "retrodictive", "forward_bayes"]
        values = {label: (float(a), float(b)) for label, a, b in rows[1:]}
        assert values["e"] == pytest.approx((1 / 3, 1 / 3), abs=1e-11)
        assert values["g"] == pytest.approx((2 / 3, 2 / 3), abs=1e-11)
        assert values["max_deviation"][0] <= 1e-10

    def test_biased_preset_json(self, runner):
        args = [
            "posterior",
            "--pom",
            "theta:1.0471975511965976",
            "--ensemble",
            "biased-e-plus:0.5",
            "--format",
            "json",
        ]
        result = runner.invoke(cli, args)
        assert result.exit_code == 0, result.stderr
        payload = json.loads(result.stdout)
        assert set(payload["retrodictive"]) == {"e", "plus"}
        assert payload["retrodictive"] == pytest.approx(payload["forward_bayes"], abs=1e-10)
        assert sum(payload["retrodictive"].values()) == pytest.approx(1.0)

    def test_incompatible_ensemble_exit_code(self, runner):
        args = ["posterior", "--pom", "excited", "--tau", "1", "--ensemble", GROUND_ONLY]
        result = runner.invoke(cli, args)
        assert result.exit_code == EXIT_IMPOSSIBLE
        assert "incompatible" in result.stderr

    @pytest.mark.parametrize(
        "ensemble",
        [
            "skewed",
            "biased-e-plus:1.5",
            "{}",
            "{not json",
            '{"e": {"ee": [0.3, 0], "eg": [0, 0], "ge": [0, 0], "gg": [0, 0]}}',
            '{"e": {"ee": [1.5, 0], "eg": [0, 0], "ge": [0, 0], "gg": [-0.5, 0]}}',
        ],
    )
    def test_bad_ensemble_exit_code(self, runner, ensemble):
        result = runner.invoke(cli, ["posterior", "--ensemble", ensemble])
        assert result.exit_code == EXIT_USAGE
        assert result.stderr.startswith("error:")


class TestFigureCommand:
    """``retroatom figure``."""

    def test_csv_layout(self, runner):
        result = runner.invoke(cli, ["figure", "2a"])
        assert result.exit_code == 0, result.stderr
        assert "\r" not in result.stdout
        rows = _table(result.stdout)
        assert rows[0] == ["tau", "rho_ee", "rho_gg"]
        assert len(rows) == 201
        assert [float(x) for x in rows[1]] == pytest.approx([0.0, 1.0, 0.0], abs=1e-15)
        assert float(rows[-1][0]) == pytest.approx(5.0)

    def test_options_shape_grid(self, runner):
        result = runner.invoke(cli, ["figure", "1b", "--points", "4", "--tau-max", "3"])
        assert result.exit_code == 0, result.stderr
        rows = _table(result.stdout)
        assert [row[0] for row in rows[1:]] == ["0", "1", "2", "3"]

    def test_json_payload(self, runner):
        result = runner.invoke(cli, ["figure", "4b", "--points", "3", "--format", "json"])
        assert result.exit_code == 0, result.stderr
        payload = json.loads(result.stdout)
        assert payload["figure"] == "4b"
        assert payload["columns"] == ["tau", "re_rho_eg", "im_rho_eg", "re_rho_ge", "im_rho_ge"]
        assert len(payload["rows"]) == 3

    def test_deterministic(self, runner):
        first = runner.invoke(cli, ["figure", "3d", "--points", "50"])
        second = runner.invoke(cli, ["figure", "3d", "--points", "50"])
        assert first.exit_code == second.exit_code == 0
        assert first.stdout_bytes == second.stdout_bytes

    def test_unknown_figure_exit_code(self, runner):
        result = runner.invoke(cli, ["figure", "5a"])
        assert result.exit_code == EXIT_USAGE
        assert "unknown figure id '5a'" in result.stderr

    def test_too_few_points(self, runner):
        assert runner.invoke(cli, ["figure", "1a", "--points", "1"]).exit_code == EXIT_USAGE

    def test_every_figure_has_a_golden(self):
        recorded = sorted(path.name for path in GOLDENS.glob("fig_*.csv"))
        assert recorded == sorted(f"fig_{figure.value}.csv" for figure in FigureId)

    @pytest.mark.parametrize("figure", [figure.value for figure in FigureId])
    def test_matches_golden(self, runner, figure):
        """Header and τ column match the recorded text; every value agrees to GOLDEN_TOL."""
        golden = _table((GOLDENS / f"fig_{figure}.csv").read_text(encoding="utf-8"))
        result = runner.invoke(cli, ["figure", figure])
        assert result.exit_code == 0, result.stderr
        rows = _table(result.stdout)
        assert rows[0] == golden[0]
        assert [row[0] for row in rows] == [row[0] for row in golden]
        for row, expected in zip(rows[1:], golden[1:], strict=True):
            assert len(row) == len(expected)
            actual_values = [float(x) for x in row[1:]]
            golden_values = [float(x) for x in expected[1:]]
            assert actual_values == pytest.approx(golden_values, abs=GOLDEN_TOL), row[0]


class TestCurveCommand:
    """``retroatom curve``."""

    def test_predictive_thermal_relaxation(self, runner):
        args = [
            "curve",
            "--direction",
            "predictive",
            "--channel",
            "thermal",
            "--nbar",
            "1",
            "--points",
            "3",
            "--tau-max",
            "30",
        ]
        result = runner.invoke(cli, args)
        assert result.exit_code == 0, result.stderr
        rows = _table(result.stdout)
        assert rows[0] == [
            "tau", "rho_ee", "rho_gg", "re_rho_eg", "im_rho_eg", "re_rho_ge", "im_rho_ge",
        ]  # fmt: skip
        assert float(rows[-1][1]) == pytest.approx(1 / 3)

    def test_retrodictive_steady_state_preset(self, runner):
        args = ["curve", "--channel", "driven", "--v", "4", "--state", "steady-state"]
        result = runner.invoke(cli, [*args, "--points", "5"])
        assert result.exit_code == 0, result.stderr
        assert len(_table(result.stdout)) == 6

    @pytest.mark.parametrize("extra", [["--points", "1"], ["--tau-max", "0"]])
    def test_bad_grid_exit_code(self, runner, extra):
        assert runner.invoke(cli, ["curve", *extra]).exit_code == EXIT_USAGE

    def test_tau_is_not_an_option(self, runner):
        """The grid sets τ, so a single interval has no meaning here."""
        result = runner.invoke(cli, ["curve", "--tau", "2"])
        assert result.exit_code == EXIT_USAGE
        assert "--tau" in result.stderr
        assert "--tau " not in runner.invoke(cli, ["curve", "--help"]).stdout


class TestCheckCommand:
    """``retroatom check``."""

    @pytest.fixture
    def quick_suite(self, monkeypatch, quick_check_config):
        """Run the real suite on the reduced configuration."""
        monkeypatch.setattr(
            CLI_MODULE, "run_checks", lambda config: suite.run_checks(quick_check_config)
        )

    def test_passes(self, runner, quick_suite):
        result = runner.invoke(cli, ["check"])
        assert result.exit_code == 0, result.stdout
        assert result.stdout.rstrip().endswith("checks passed")
        assert "transcription audit" in result.stdout

    def test_json_report(self, runner, quick_suite):
        result = runner.invoke(cli, ["check", "--json"])
        assert result.exit_code == 0
        payload = json.loads(result.stdout)
        assert len(payload["results"]) == len(suite.CHECKS)
        assert len(payload["findings"]) == 5

    def test_corrupted_channel_fails(self, runner, quick_suite, monkeypatch):
        monkeypatch.setattr(suite, "build_superoperator", stretched_thermal)
        result = runner.invoke(cli, ["check"])
        assert result.exit_code == EXIT_FAILURE
        assert "oracle_equivalence_thermal" in result.stdout.splitlines()[-1]

    def test_bad_tolerance_override(self, runner, monkeypatch):
        monkeypatch.setenv("RETROATOM_TOL_OVERRIDE", "loose")
        result = runner.invoke(cli, ["check"])
        assert result.exit_code == EXIT_USAGE
        assert "RETROATOM_TOL_OVERRIDE" in result.stderr


class TestGroup:
    """Global options and error mapping."""

    def test_json_config_is_reserved(self, runner, tmp_path):
        result = runner.invoke(cli, ["--json-config", str(tmp_path / "c.json"), "retrodict"])
        assert result.exit_code == EXIT_USAGE

    def test_log_file(self, runner, tmp_path):
        log_file = tmp_path / "logs" / "retroatom.log"
        args = ["--log-level", "DEBUG", "--log-file", str(log_file)]
        result = runner.invoke(cli, [*args, "figure", "1a", "--points", "2"])
        assert result.exit_code == 0
        assert "Figure 1a" in log_file.read_text(encoding="utf-8")

    @pytest.mark.parametrize(
        "exc, code",
        [
            (ImpossibleOutcomeError(0.0), EXIT_IMPOSSIBLE),
            (IncompatibleEnsembleError(0.0), EXIT_IMPOSSIBLE),
            (InvalidParameterError("x", "y", 1, "bad"), EXIT_USAGE),
            (ConfigurationError("x", 1, "bad"), EXIT_USAGE),
            (NonPhysicalOperatorError("x", "bad"), EXIT_FAILURE),
            (RetroAtomError("other"), EXIT_FAILURE),
        ],
    )
    def test_exit_code_mapping(self, exc, code):
        assert exit_code_for(exc) == code


class TestPresetsAndOutput:
    """Preset parsing and number formatting."""

    def test_steady_state_preset_is_channel_specific(self):
        thermal = ChannelParams(kind=ChannelKind.THERMAL, gamma=1.0, nbar=1.0)
        op = parse_pom("steady-state", thermal).op
        assert op[0, 0].real == pytest.approx(1 / 3)
        assert op[1, 1].real == pytest.approx(2 / 3)

    def test_theta_preset(self, spontaneous_params):
        pom = parse_pom("theta:0", spontaneous_params)
        assert pom.label == "theta:0"
        assert pom.op[1, 1].real == pytest.approx(1.0)

    def test_unbiased_ensemble_preset(self):
        assert parse_ensemble("unbiased-eg").labels == ["e", "g"]

    def test_inline_operators_failing_validation_are_invalid_input(self, spontaneous_params):
        indefinite = '{"ee": [1, 0], "eg": [2, 0], "ge": [2, 0], "gg": [1, 0]}'
        with pytest.raises(InvalidParameterError) as exc_info:
            parse_pom(indefinite, spontaneous_params)
        assert exc_info.value.entity_type == "pom"
        assert isinstance(exc_info.value.__cause__, NonPhysicalOperatorError)
        with pytest.raises(InvalidParameterError, match="ensemble"):
            parse_ensemble('{"e": {"ee": [0.3, 0], "eg": [0, 0], "ge": [0, 0], "gg": [0, 0]}}')

    def test_format_number_folds_negative_zero(self):
        assert format_number(-1e-17 * 0.0) == "0"
        assert format_number(1 / 3) == "0.333333333333"
        assert format_number(math.inf) == "inf"

    def test_render_csv_uses_lf(self):
        assert render_csv(["a", "b"], [(1.0, "x")]) == "a,b\n1,x\n"
