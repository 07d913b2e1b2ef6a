"""Exact rational toolkit for almost contact and almost 3-contact Lie algebras."""
from .algebra import (Form, LieAlgebra, Metric, Subspace, ce_differential, center, derived_series,
                      interior, is_cocycle, is_exact, jacobi_check, wedge)
from .connection import (Connection, canonical_connection, covariant_derivative, curvature,
                         is_canonical_connection, is_parallel_torsion, levi_civita, like_bismut,
                         pair_symmetry, ricci, torsion_form, with_skew_torsion)
from .constructors import (CATALOG, CatalogEntry, catalog, central_extension,
                           semidirect_by_derivation, so3_semidirect)
from .contact import (AlmostContact, characteristic_connection, classify_dim3,
                      decompose_central_extension, decompose_semidirect, is_abelian_contact,
                      metric_class, normality_tensor, validate_almost_contact)
from .errors import (ContactLieError, DimensionError, InternalError, NotApplicableError,
                     PreconditionError, SchemaError, TheoremViolation)
from .hypercomplex import hypercomplex_check, recognize_4d
from .lattice import (gamma_abelianization, q8_presentation, rotation_integer_form,
                      semidirect_abelianization, smith_normal_form)
from .three_contact import (Almost3Contact, admits_3_alpha_delta_sasaki, canonical_check,
                            canonical_torsion, case_analysis, classify_dim7, identity_checks,
                            is_abelian_3contact, reeb_killing_tensors, sphere_structure,
                            structure_invariants, validate_almost_3contact)

__version__ = "0.1.0"

__all__ = [
    "Almost3Contact",
    "AlmostContact",
    "CATALOG",
    "CatalogEntry",
    "Connection",
    "ContactLieError",
    "DimensionError",
    "Form",
    "InternalError",
    "LieAlgebra",
    "Metric",
    "NotApplicableError",
    "PreconditionError",
    "SchemaError",
    "Subspace",
    "TheoremViolation",
    "admits_3_alpha_delta_sasaki",
    "canonical_check",
    "canonical_connection",
    "canonical_torsion",
    "case_analysis",
    "catalog",
    "ce_differential",
    "center",
    "central_extension",
    "characteristic_connection",
    "classify_dim3",
    "classify_dim7",
    "covariant_derivative",
    "curvature",
    "decompose_central_extension",
    "decompose_semidirect",
    "derived_series",
    "gamma_abelianization",
    "hypercomplex_check",
    "identity_checks",
    "interior",
    "is_abelian_3contact",
    "is_abelian_contact",
    "is_canonical_connection",
    "is_cocycle",
    "is_exact",
    "is_parallel_torsion",
    "jacobi_check",
    "levi_civita",
    "like_bismut",
    "metric_class",
    "normality_tensor",
    "pair_symmetry",
    "q8_presentation",
    "recognize_4d",
    "reeb_killing_tensors",
    "ricci",
    "rotation_integer_form",
    "semidirect_abelianization",
    "semidirect_by_derivation",
    "smith_normal_form",
    "so3_semidirect",
    "sphere_structure",
    "structure_invariants",
    "torsion_form",
    "validate_almost_3contact",
    "validate_almost_contact",
    "wedge",
    "with_skew_torsion",
]
