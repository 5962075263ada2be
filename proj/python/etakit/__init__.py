"""Metric operators for pseudo-Hermitian Hamiltonians."""

from ._etakit import *  # noqa: F401,F403
from ._etakit import InputError, PreconditionError  # noqa: F401

__version__ = "0.1.0"
