"""Rees algebras of monomial curves in A^4 defined by arithmetic sequences.

Exact polynomial arithmetic, monomial orders, a Buchberger engine, the
curve's defining binomials, the Rees presentation and its elimination
ideal, and a Jacobian check at the fiber prime.
"""

from .algebra import Monomial, Polynomial, RingContext
from .curves import CurveParams, derive_params, patil_basis
from .groebner import (
    IdealPresentation,
    buchberger,
    divide,
    eliminate,
    ideals_equal,
    is_groebner_basis,
    minimalize,
    minimalize_and_reduce,
    reduced_groebner_basis,
)
from .orders import OrderSpec, compare, leading_term
from .rees import build_ambient, compute_E_b, hat_a_b, hat_E_b, rees_generators
from .smoothness import smoothness_verdict
from .verify import TARGETS, verify_theorem

__all__ = [
    "Monomial", "Polynomial", "RingContext",
    "CurveParams", "derive_params", "patil_basis",
    "IdealPresentation", "buchberger", "divide", "eliminate", "ideals_equal", "is_groebner_basis",
    "minimalize", "minimalize_and_reduce", "reduced_groebner_basis",
    "OrderSpec", "compare", "leading_term",
    "build_ambient", "compute_E_b", "hat_a_b", "hat_E_b", "rees_generators",
    "smoothness_verdict", "TARGETS", "verify_theorem",
]
