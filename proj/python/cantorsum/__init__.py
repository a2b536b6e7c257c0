"""Dynamically defined Cantor sets: dimensions, thickness, sumsets, verification."""

from ._core import (
    convolution_l2,
    entropy,
    equilibrium_weights,
    gap_lemma_predicate,
    measure,
    middle_alpha_classify,
    middle_alpha_cover,
    minkowski_sum,
    moran_dimension,
    pushforward_histogram,
    sum_cover_measures,
    thickness,
    verify,
)

__all__ = [
    "convolution_l2",
    "entropy",
    "equilibrium_weights",
    "gap_lemma_predicate",
    "measure",
    "middle_alpha_classify",
    "middle_alpha_cover",
    "minkowski_sum",
    "moran_dimension",
    "pushforward_histogram",
    "sum_cover_measures",
    "thickness",
    "verify",
]
