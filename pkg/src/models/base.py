"""Base enums shared across retroatom packages."""

from enum import Enum


class Role(str, Enum):
    """Which formalism a density matrix belongs to."""

    PREDICTIVE = "predictive"  # Assigned from a preparation, evolves forward
    RETRODICTIVE = "retrodictive"  # Assigned from a measurement, evolves backward


class ChannelKind(str, Enum):
    """Environment models for the two-level atom."""

    SPONTANEOUS = "spontaneous"  # Vacuum field
    THERMAL = "thermal"  # Thermal field with mean occupation n̄
    DRIVEN = "driven"  # Resonant coherent drive plus spontaneous decay


class FigureId(str, Enum):
    """Figure data sets that can be regenerated."""

    FIG_1A = "1a"
    FIG_1B = "1b"
    FIG_2A = "2a"
    FIG_2B = "2b"
    FIG_2C = "2c"
    FIG_2D = "2d"
    FIG_3A = "3a"
    FIG_3B = "3b"
    FIG_3C = "3c"
    FIG_3D = "3d"
    FIG_4A = "4a"
    FIG_4B = "4b"


class OutputFormat(str, Enum):
    """Serialization of command output."""

    CSV = "csv"
    JSON = "json"


class CurveDirection(str, Enum):
    """Direction of a time-series curve."""

    PREDICTIVE = "predictive"
    RETRODICTIVE = "retrodictive"
