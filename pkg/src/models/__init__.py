"""Shared enums for retroatom."""

from .base import ChannelKind, CurveDirection, FigureId, OutputFormat, Role

__all__ = ["ChannelKind", "CurveDirection", "FigureId", "OutputFormat", "Role"]
