"""Exact coalgebra, comodule and quiver path-coalgebra computations."""

__version__ = "1.0.0"

from .exactlin import GF, QQ, Matrix, Subspace  # noqa: E402,F401
from .coalg import (  # noqa: E402,F401
    Coalgebra,
    DualAlgebra,
    FiltrationChain,
    check_axioms,
    coradical_filtration,
    dual_algebra,
    ideal_product,
    radical,
    skew_primitives,
    wedge,
)
from .comod import (  # noqa: E402,F401
    Comodule,
    check_comodule,
    coefficient_coalgebra,
    hom_image_sum,
    hom_space,
    loewy_series,
    multiplicity,
    quotient,
    regular_comodule,
    socle,
    socle_annihilator_check,
)
from .quiverlab import compile_truncation, enumerate_paths, parse_spec  # noqa: E402,F401
