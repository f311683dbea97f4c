"""Quasiperiodic Schrödinger resonance toolkit (C++ core)."""

from ._core import *  # noqa: F401,F403
from ._core import OmegaElement, LatticeOverflowError  # noqa: F401

__version__ = "0.1.0"
