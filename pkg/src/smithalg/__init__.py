"""Exact arithmetic for Smith's algebras R(f) and their Whittaker modules."""

from .center import WhittakerCharacter, eta_projection, freeness_basis_matrix, omega_eta_power, reduced_action
from .errors import DomainError, InconsistencyError, NonTerminationError
from .exactpoly import (
    FactoredPoly,
    Poly,
    discrete_antiderivative,
    extended_gcd,
    factor_over_rationals,
    poly_shift,
)
from .modules import (
    ModuleVector,
    VermaModule,
    WhittakerModule,
    central_annihilator,
    isomorphism_test,
    whittaker_vector_solve,
)
from .parsing import normalize, parse_pbw, parse_poly
from .pbw import E, F, H, PBWElement, SmithAlgebra
from .structure import (
    certify_irreducible,
    composition_series,
    crt_decompose,
    divisor_lattice,
    submodule,
    transporter_ideal,
    unique_maximal_submodule,
)

__version__ = "0.1.0"

__all__ = [
    "WhittakerCharacter", "eta_projection", "freeness_basis_matrix", "omega_eta_power", "reduced_action",
    "DomainError", "InconsistencyError", "NonTerminationError",
    "FactoredPoly", "Poly", "discrete_antiderivative", "extended_gcd", "factor_over_rationals", "poly_shift",
    "ModuleVector", "VermaModule", "WhittakerModule", "central_annihilator", "isomorphism_test",
    "whittaker_vector_solve",
    "normalize", "parse_pbw", "parse_poly",
    "E", "F", "H", "PBWElement", "SmithAlgebra",
    "certify_irreducible", "composition_series", "crt_decompose", "divisor_lattice", "submodule",
    "transporter_ideal", "unique_maximal_submodule",
]
