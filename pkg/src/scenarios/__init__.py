"""
Closed-form scenarios and figure data for the two-level atom.
"""

from .driven import (
    driven_bloch,
    driven_retro_excited,
    driven_retro_sigma1,
    driven_retro_sigma2,
    driven_steady_state,
)
from .figures import (
    FIGURES,
    default_tau_grid,
    figure_data,
    figure_params,
    predictive_curve,
    resolve_figure,
    retrodictive_curve,
)
from .models import FigureSpec, ScenarioCurve
from .spontaneous import (
    spont_prep_probs,
    spont_retro_elements,
    spont_retro_theta,
    superposition_plus_as_printed,
    superposition_posterior,
)
from .thermal import thermal_excited_population, thermal_retro_elements

__all__ = [
    "FIGURES",
    "FigureSpec",
    "ScenarioCurve",
    "default_tau_grid",
    "driven_bloch",
    "driven_retro_excited",
    "driven_retro_sigma1",
    "driven_retro_sigma2",
    "driven_steady_state",
    "figure_data",
    "figure_params",
    "predictive_curve",
    "resolve_figure",
    "retrodictive_curve",
    "spont_prep_probs",
    "spont_retro_elements",
    "spont_retro_theta",
    "superposition_plus_as_printed",
    "superposition_posterior",
    "thermal_excited_population",
    "thermal_retro_elements",
]
