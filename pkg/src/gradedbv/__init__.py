"""Exact graded-supermanifold multivector calculus and divergence-generated BV operators."""

from ._core import Chart, ChartMismatchError
from .grassmann import MIXED, GradedElement, Superfunction, coordinate, monomial, sf_partial
from .calculus import GradedForm, Multivector, derivation, differential

__all__ = [
    "Chart", "ChartMismatchError", "MIXED", "GradedElement", "Superfunction",
    "coordinate", "monomial", "sf_partial", "GradedForm", "Multivector",
    "derivation", "differential",
]
__version__ = "0.1.0"
