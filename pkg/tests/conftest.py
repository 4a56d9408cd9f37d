"""Pytest configuration and shared fixtures."""

from .fixtures import *  # noqa: F403, F401
