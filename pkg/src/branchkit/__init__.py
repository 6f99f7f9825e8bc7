"""Exact computer algebra for the GL(3) x GL(2) branching and Eichler-Shimura constants."""

from .scalar import GaussianRational, I, field_inverse, power_of_i
from .poly import MultiPoly, RationalFunction, VariableSet

__version__ = "0.1.0"

__all__ = [
    "GaussianRational",
    "I",
    "field_inverse",
    "power_of_i",
    "MultiPoly",
    "RationalFunction",
    "VariableSet",
]
