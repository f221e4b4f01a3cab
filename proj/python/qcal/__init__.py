"""Caloric potentials (entropy and temperature changes) of small quantum spin models."""

from ._core import *  # noqa: F401,F403
from ._core import QcalError, __version__

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
