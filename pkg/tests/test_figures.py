"""Tests for the figure registry and curve generation."""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.channels.models import ChannelParams
from src.exceptions import InvalidParameterError, UnknownFigureError
from src.models.base import ChannelKind, CurveDirection, FigureId
from src.qop_core.models import DensityMatrix, PomElement
from src.qop_core.states import excited_projector
from src.scenarios.driven import driven_retro_excited
from src.scenarios.figures import (
    ALL_SERIES,
    FIGURES,
    default_tau_grid,
    figure_data,
    figure_params,
    predictive_curve,
    resolve_figure,
    retrodictive_curve,
)


class TestRegistry:
    """Figure ids and what each panel plots."""

    def test_twelve_panels(self):
        assert [figure.value for figure in FIGURES] == [
            "1a", "1b", "2a", "2b", "2c", "2d", "3a", "3b", "3c", "3d", "4a", "4b",
        ]  # fmt: skip

    def test_figure_one_is_thermal(self):
        assert FIGURES[FigureId.FIG_1A].kind == ChannelKind.THERMAL
        assert all(
            spec.kind == ChannelKind.DRIVEN
            for figure, spec in FIGURES.items()
            if not figure.value.startswith("1")
        )

    def test_figure_four_is_retrodictive(self):
        assert FIGURES[FigureId.FIG_4A].direction == CurveDirection.RETRODICTIVE
        assert FIGURES[FigureId.FIG_4B].series == [
            "re_rho_eg", "im_rho_eg", "re_rho_ge", "im_rho_ge",
        ]  # fmt: skip

    def test_resolve(self):
        assert resolve_figure("2b") == FigureId.FIG_2B
        assert resolve_figure(FigureId.FIG_3C) == FigureId.FIG_3C

    @pytest.mark.parametrize("figure", ["5a", "", "2B", "fig1a"])
    def test_unknown_figure(self, figure):
        with pytest.raises(UnknownFigureError, match="unknown figure id"):
            resolve_figure(figure)


class TestDefaults:
    """Default parameters and τ grids."""

    def test_thermal_params(self):
        params = figure_params("1a")
        assert params.kind == ChannelKind.THERMAL
        assert params.nbar == 1.0
        assert params.v == 0.0

    def test_driven_params(self):
        params = figure_params("2a")
        assert params.kind == ChannelKind.DRIVEN
        assert params.v == 4.0
        assert params.nbar == 0.0

    def test_grid_spans(self):
        thermal = default_tau_grid("1a")
        driven = default_tau_grid("2a")
        assert len(thermal) == len(driven) == 200
        assert thermal[0] == 0.0
        assert thermal[-1] == pytest.approx(6.0)
        assert driven[-1] == pytest.approx(5.0)

    def test_grid_scales_with_gamma(self):
        grid = default_tau_grid("2a", points=11, gamma=2.0, gamma_tau_max=4.0)
        assert grid[-1] == pytest.approx(2.0)
        assert np.all(np.diff(grid) > 0)

    def test_grid_rejects_bad_inputs(self):
        with pytest.raises(InvalidParameterError):
            default_tau_grid("2a", points=1)
        with pytest.raises(InvalidParameterError):
            default_tau_grid("2a", gamma_tau_max=0.0)


class TestFigureData:
    """Series per panel and their physical anchors."""

    @pytest.mark.parametrize("figure", list(FigureId))
    def test_columns_match_registry(self, figure):
        grid = default_tau_grid(figure, points=5)
        curve = figure_data(figure, figure_params(figure), grid)
        assert curve.figure == figure
        assert curve.columns() == ["tau", *FIGURES[figure].series]
        assert len(curve.rows()) == 5

    def test_1a_relaxes_to_thermal_populations(self):
        curve = figure_data("1a", figure_params("1a"), [0.0, 30.0])
        assert curve.series["rho_ee"] == pytest.approx([1.0, 1 / 3])
        assert curve.series["rho_gg"] == pytest.approx([0.0, 2 / 3])

    def test_1b_tends_to_half(self):
        curve = figure_data("1b", figure_params("1b"), [0.0, 30.0])
        assert curve.series["rho_ee"] == pytest.approx([1.0, 0.5])

    def test_2b_matches_closed_form(self):
        grid = default_tau_grid("2b", points=21)
        curve = figure_data("2b", figure_params("2b"), grid)
        expected = [driven_retro_excited(1.0, 4.0, tau)[0, 0].real for tau in grid]
        assert_allclose(curve.series["rho_ee"], expected, atol=1e-10)

    def test_3b_starts_at_half(self):
        curve = figure_data("3b", figure_params("3b"), [0.0, 1.0])
        assert curve.series["rho_ee"][0] == pytest.approx(0.5)
        assert curve.series["rho_gg"][0] == pytest.approx(0.5)

    def test_2d_coherences_opposite(self):
        curve = figure_data("2d", figure_params("2d"), default_tau_grid("2d", points=11))
        opposite = [-x for x in curve.series["im_rho_ge"]]
        assert_allclose(curve.series["im_rho_eg"], opposite, atol=1e-12)

    def test_4b_has_imaginary_coherence(self):
        """Retrodicting the steady state gives nonzero Im ρ_eg at intermediate τ."""
        curve = figure_data("4b", figure_params("4b"), [0.0, 0.5, 1.0])
        assert curve.series["im_rho_eg"][0] != pytest.approx(0.0)
        assert max(abs(x) for x in curve.series["re_rho_eg"]) == pytest.approx(0.0, abs=1e-12)

    def test_kind_mismatch_rejected(self):
        with pytest.raises(InvalidParameterError, match="needs thermal"):
            figure_data("1a", figure_params("2a"), [0.0, 1.0])

    def test_unknown_figure_rejected(self):
        with pytest.raises(UnknownFigureError):
            figure_data("9z", figure_params("1a"), [0.0])

    def test_unsorted_grid_rejected(self):
        with pytest.raises(InvalidParameterError):
            figure_data("2a", figure_params("2a"), [1.0, 0.0])


class TestCurves:
    """Generic predictive and retrodictive curves."""

    def test_predictive_ignores_params_tau(self, spontaneous_params):
        curve = predictive_curve(
            spontaneous_params, DensityMatrix(op=excited_projector()), [0.0, 1.0]
        )
        assert curve.series["rho_ee"] == pytest.approx([1.0, math.exp(-2.0)])
        assert curve.columns() == ["tau", *ALL_SERIES]

    def test_retrodictive_excited_stays_excited(self):
        params = ChannelParams(kind=ChannelKind.SPONTANEOUS, gamma=1.0)
        curve = retrodictive_curve(params, PomElement(op=excited_projector()), [0.0, 2.0, 10.0])
        assert curve.series["rho_ee"] == pytest.approx([1.0, 1.0, 1.0])
