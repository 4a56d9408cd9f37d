"""
CLI configuration settings.
"""

from pathlib import Path

from pydantic import BaseModel, ConfigDict

from src.channels.models import ChannelParams
from src.models.base import OutputFormat
from src.qop_core.models import PomElement, PreparationEnsemble

from .presets import parse_ensemble, parse_pom


class CliConfig(BaseModel):
    """One command invocation: channel, measurement, source, and where output goes."""

    model_config = ConfigDict(frozen=True)

    params: ChannelParams
    pom: str = "excited"
    ensemble: str | None = None  # Only `posterior` needs one
    output: Path | None = None  # stdout when unset
    format: OutputFormat = OutputFormat.CSV

    def pom_element(self) -> PomElement:
        return parse_pom(self.pom, self.params)

    def preparation_ensemble(self) -> PreparationEnsemble:
        return parse_ensemble(self.ensemble or "unbiased-eg")
