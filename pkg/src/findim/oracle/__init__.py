"""Exact linear-algebra oracle: matrix modules over based algebras."""

from .homs import are_isomorphic, decompose, hom_space
from .modules import (
    MatrixModule,
    layer_matrix,
    module_from,
    projective_cover,
    radical,
    syzygy_matrix,
    top,
)
from .tower import Exceeded, SyzygyOracle, Undetermined, pdim_upto, repetition_index_bounded

__all__ = [
    "MatrixModule",
    "module_from",
    "radical",
    "top",
    "projective_cover",
    "syzygy_matrix",
    "layer_matrix",
    "are_isomorphic",
    "decompose",
    "hom_space",
    "pdim_upto",
    "repetition_index_bounded",
    "SyzygyOracle",
    "Exceeded",
    "Undetermined",
]
