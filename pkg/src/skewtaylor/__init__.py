"""Taylor resolutions, DG-Gamma structure and homotopy invariants for monomial
ideals in skew polynomial rings."""
from .errors import BudgetExceeded, NotMinimalError
from .scalars import QQ, PrimeField, RationalField, field_from_descriptor
from .qcommute import QMatrix, c_constant, chi_monomials, gdegree
from .skewpoly import MonomialIdeal, SkewPoly, minimal_generators
from .taylor import TaylorComplex, betti, build_taylor, strand, verify_d_squared, verify_resolution
from .dgalgebra import (
    divided_power, element_product, verify_associativity, verify_color_comm,
    verify_gamma_axioms, verify_leibniz,
)
from .lattice import build_gcd_graph, build_lcm_lattice, find_color_iso, predict_equalities
from .homres import (
    QuotientAlgebra, deviations, minimal_resolution_of_k, pi2_multidegrees, poincare_series,
)

__version__ = "0.1.0"
