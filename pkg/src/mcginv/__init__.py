"""Exact mapping class group invariants from ribbon Hopf algebra data."""

__version__ = "0.1.0"

from .cyclo import CycScalar, zeta, sqrt_in_cyclotomic  # noqa: F401
from .errors import MCGError  # noqa: F401
