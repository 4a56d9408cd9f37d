"""
The ``retroatom`` command-line interface.
"""

from .config import CliConfig
from .main import EXIT_CODES, cli, exit_code_for, main

__all__ = ["EXIT_CODES", "CliConfig", "cli", "exit_code_for", "main"]
