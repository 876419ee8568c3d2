"""Interpretation of terms as cospans of hypergraphs."""

from .functor import FiniteFunction, discrete_to_frobenius, extract, faithfulness_probe, translate

__all__ = [
    "FiniteFunction",
    "translate",
    "extract",
    "discrete_to_frobenius",
    "faithfulness_probe",
]
