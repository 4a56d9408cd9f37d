"""
Retrodictive states and preparation probabilities.
"""

from .models import PreparationPosterior, RetrodictionResult
from .posterior import forward_bayes, prep_prob_direct, preparation_posterior
from .retrodict import retrodict_closed, retrodict_open, retrodict_pauli

__all__ = [
    "PreparationPosterior",
    "RetrodictionResult",
    "forward_bayes",
    "prep_prob_direct",
    "preparation_posterior",
    "retrodict_closed",
    "retrodict_open",
    "retrodict_pauli",
]
