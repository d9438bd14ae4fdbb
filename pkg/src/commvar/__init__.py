"""Exact Groebner-basis and degree computations for commuting-type matrix schemes."""

__version__ = "0.1.0"

from .groebner import (
    GroebnerBasis,
    IdealSpec,
    buchberger,
    initial_forms_ideal,
    normal_form,
)
from .hilbert import (
    BidegreePolynomial,
    bidegree,
    degree,
    dimension,
    k_polynomial,
    multidegree,
)
from .permlab import PartialPerm, Permutation, parse_perm
from .polyring import (
    GREVLEX,
    LEX,
    Polynomial,
    PolyRing,
    TermOrder,
    WeightVector,
    matrix_ring,
)
from .schemes import SchemeTag, build_ideal

__all__ = [
    "__version__",
    "BidegreePolynomial",
    "GREVLEX",
    "GroebnerBasis",
    "IdealSpec",
    "LEX",
    "PartialPerm",
    "Permutation",
    "PolyRing",
    "Polynomial",
    "SchemeTag",
    "TermOrder",
    "WeightVector",
    "bidegree",
    "buchberger",
    "build_ideal",
    "degree",
    "dimension",
    "initial_forms_ideal",
    "k_polynomial",
    "matrix_ring",
    "multidegree",
    "normal_form",
    "parse_perm",
]
