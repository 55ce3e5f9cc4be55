"""Homological invariants of monomial quiver algebras and tiled order reductions."""

__version__ = "0.1.0"

from .algebra import (
    AlgebraModel,
    Arrow,
    MonomialPresentation,
    Path,
    Quiver,
    build_algebra,
    dim_radical,
    opposite,
)
from .engine import (
    INFINITY,
    IdealClass,
    PathIdealSum,
    SyzygyGraph,
    gl_dim,
    pdim_ideal,
    pdim_simple,
    syzygy,
    syzygy_graph,
    syzygy_of_ideal,
    syzygy_of_simple,
)
from .formats import (
    AlgebraDocument,
    parse_algebra,
    parse_exponent_matrix,
    parse_module_expr,
    print_algebra,
    print_exponent_matrix,
)
from .invariants import (
    classical_bounds,
    compute_s,
    findim_interval,
    iz_bounds,
    repetition_index,
    tiled_findim,
)
from .terms import Ideal, LayerMatrix, Quotient, Simple
from .tiled import BasedAlgebra, ExponentMatrix, NonMonomial, import_tiled_order

__all__ = [
    "AlgebraModel",
    "Arrow",
    "MonomialPresentation",
    "Path",
    "Quiver",
    "build_algebra",
    "dim_radical",
    "opposite",
    "INFINITY",
    "IdealClass",
    "PathIdealSum",
    "SyzygyGraph",
    "gl_dim",
    "pdim_ideal",
    "pdim_simple",
    "syzygy",
    "syzygy_graph",
    "syzygy_of_ideal",
    "syzygy_of_simple",
    "AlgebraDocument",
    "parse_algebra",
    "parse_exponent_matrix",
    "parse_module_expr",
    "print_algebra",
    "print_exponent_matrix",
    "classical_bounds",
    "compute_s",
    "findim_interval",
    "iz_bounds",
    "repetition_index",
    "tiled_findim",
    "Ideal",
    "LayerMatrix",
    "Quotient",
    "Simple",
    "BasedAlgebra",
    "ExponentMatrix",
    "NonMonomial",
    "import_tiled_order",
]
