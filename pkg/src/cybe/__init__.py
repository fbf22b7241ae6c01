"""Exact-arithmetic toolkit for the classical Yang-Baxter equation on
three-dimensional Lie algebras whose derived algebra is two dimensional."""

from .errors import CYBEError
from .fields import GF, GF4, QQ, Field, Scalar, extension, parse_field, solve_quadratic
from .lie import (
    CanonicalParams,
    EigenCase,
    EigenForm,
    LieAlgebra,
    canonical_algebra,
    derived_dimension,
    eigen_normalize,
    make_algebra,
    recognize_canonical_form,
)
from .tensors import (
    Tensor2,
    Tensor3,
    condition_system,
    cybe_residual,
    is_cybe_solution,
    is_strongly_symmetric,
)
from .classify import Family, Verdict, classify, classify_char2, classify_char_ne2
from .bialgebra import check_axioms, cobracket, is_coboundary, is_triangular

__version__ = "0.1.0"
